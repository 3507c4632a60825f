// Copyright 2026 The DEG Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "deg/io.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <numeric>
#include <random>
#include <string>

namespace deg {

namespace {

class ByteWriter {
 public:
  explicit ByteWriter(std::size_t reserve) { bytes_.reserve(reserve); }

  void u8(std::uint8_t v) { bytes_.push_back(std::byte{v}); }
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) bytes_.push_back(std::byte(v >> (8 * i)));
  }
  void u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) bytes_.push_back(std::byte(v >> (8 * i)));
  }
  void f32(float v) { u32(std::bit_cast<std::uint32_t>(v)); }
  void raw(std::string_view s) {
    for (char c : s) bytes_.push_back(std::byte(c));
  }

  std::vector<std::byte> take() { return std::move(bytes_); }

 private:
  std::vector<std::byte> bytes_;
};

class ByteReader {
 public:
  explicit ByteReader(std::span<const std::byte> bytes) : bytes_(bytes) {}

  std::size_t remaining() const noexcept { return bytes_.size() - pos_; }

  void need(std::size_t n) const {
    if (remaining() < n) throw Error(ErrorCode::TruncatedFile, "unexpected end of data");
  }
  std::uint8_t u8() {
    need(1);
    return std::uint8_t(bytes_[pos_++]);
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= std::uint32_t(bytes_[pos_ + i]) << (8 * i);
    pos_ += 4;
    return v;
  }
  std::uint64_t u64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= std::uint64_t(bytes_[pos_ + i]) << (8 * i);
    pos_ += 8;
    return v;
  }
  float f32() { return std::bit_cast<float>(u32()); }

 private:
  std::span<const std::byte> bytes_;
  std::size_t pos_ = 0;
};

template <typename T, typename Emit>
std::vector<std::byte> encode_vecs(std::size_t rows, std::uint32_t cols, Emit&& row_at) {
  ByteWriter w(rows * (4 + std::size_t(cols) * 4));
  for (std::size_t r = 0; r < rows; ++r) {
    w.u32(cols);
    const auto row = row_at(r);
    for (T value : row) {
      if constexpr (std::is_same_v<T, float>) {
        w.f32(value);
      } else {
        w.u32(static_cast<std::uint32_t>(value));
      }
    }
  }
  return w.take();
}

// Shared record walker for fvecs/ivecs; returns (cols, flat values as raw u32).
std::pair<std::uint32_t, std::vector<std::uint32_t>> decode_vecs(std::span<const std::byte> bytes,
                                                                 std::optional<std::size_t> limit) {
  ByteReader r(bytes);
  std::uint32_t cols = 0;
  std::vector<std::uint32_t> values;
  std::size_t rows = 0;
  while (r.remaining() > 0 && (!limit || rows < *limit)) {
    const auto dim = static_cast<std::int32_t>(r.u32());
    if (dim <= 0) throw Error(ErrorCode::CorruptHeader, "record " + std::to_string(rows) + " has dimension <= 0");
    if (rows == 0) {
      cols = std::uint32_t(dim);
      if (limit) values.reserve(*limit * cols);
      else values.reserve(bytes.size() / 4);
    } else if (std::uint32_t(dim) != cols) {
      throw Error(ErrorCode::CorruptHeader, "record " + std::to_string(rows) + " has dimension " +
                                                std::to_string(dim) + ", expected " + std::to_string(cols));
    }
    r.need(std::size_t(cols) * 4);
    for (std::uint32_t i = 0; i < cols; ++i) values.push_back(r.u32());
    ++rows;
  }
  if (rows == 0 && (!limit || *limit > 0)) throw Error(ErrorCode::CorruptHeader, "no records");
  return {cols, std::move(values)};
}

}  // namespace

std::vector<std::byte> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary | std::ios::ate);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  const auto size = static_cast<std::size_t>(in.tellg());
  std::vector<std::byte> bytes(size);
  in.seekg(0);
  if (!in.read(reinterpret_cast<char*>(bytes.data()), std::streamsize(size))) {
    throw Error(ErrorCode::IoError, "cannot read " + path.string());
  }
  return bytes;
}

void write_file(const std::filesystem::path& path, std::span<const std::byte> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot create " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), std::streamsize(bytes.size()));
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
}

FeatureStore parse_fvecs(std::span<const std::byte> bytes, Metric metric, std::optional<std::size_t> limit) {
  auto [cols, raw] = decode_vecs(bytes, limit);
  std::vector<float> values(raw.size());
  std::transform(raw.begin(), raw.end(), values.begin(), [](std::uint32_t v) { return std::bit_cast<float>(v); });
  return FeatureStore(cols == 0 ? 1 : cols, metric, std::move(values));
}

FeatureStore read_fvecs(const std::filesystem::path& path, Metric metric, std::optional<std::size_t> limit) {
  return parse_fvecs(read_file(path), metric, limit);
}

void write_fvecs(const std::filesystem::path& path, const FeatureStore& store) {
  write_file(path, encode_vecs<float>(store.size(), store.dim(), [&](std::size_t r) {
               return store.row(static_cast<VertexId>(r));
             }));
}

IntMatrix parse_ivecs(std::span<const std::byte> bytes, std::optional<std::size_t> limit) {
  auto [cols, raw] = decode_vecs(bytes, limit);
  IntMatrix m;
  m.cols = cols;
  m.values.resize(raw.size());
  std::transform(raw.begin(), raw.end(), m.values.begin(), [](std::uint32_t v) { return std::int32_t(v); });
  return m;
}

IntMatrix read_ivecs(const std::filesystem::path& path, std::optional<std::size_t> limit) {
  return parse_ivecs(read_file(path), limit);
}

void write_ivecs(const std::filesystem::path& path, const IntMatrix& matrix) {
  write_file(path, encode_vecs<std::int32_t>(matrix.rows(), matrix.cols, [&](std::size_t r) { return matrix.row(r); }));
}

IntMatrix to_ivecs(const GroundTruth& truth) {
  IntMatrix m;
  if (truth.empty()) return m;
  m.cols = static_cast<std::uint32_t>(truth.front().size());
  for (const KnnRow& row : truth) {
    if (row.size() != m.cols) throw Error(ErrorCode::InvalidArgument, "ragged ground truth");
    for (const ScoredId& e : row) m.values.push_back(std::int32_t(e.id));
  }
  return m;
}

GroundTruth ground_truth_from_ivecs(const IntMatrix& ids, const FeatureStore& base, const FeatureStore& queries) {
  if (ids.rows() < queries.size()) throw Error(ErrorCode::InvalidArgument, "ground truth has fewer rows than queries");
  GroundTruth truth(queries.size());
  for (std::size_t q = 0; q < queries.size(); ++q) {
    for (std::int32_t id : ids.row(q)) {
      if (id < 0 || std::size_t(id) >= base.size()) {
        throw Error(ErrorCode::UnknownVertex, "ground truth id " + std::to_string(id));
      }
      truth[q].push_back({VertexId(id), base.distance(queries.row(VertexId(q)), VertexId(id))});
    }
  }
  return truth;
}

std::uint64_t graph_file_size(std::uint64_t vertices, std::uint32_t dim, std::uint32_t degree, bool weights) {
  const std::uint64_t per_vertex = 4ull * dim + 4ull * degree + (weights ? 4ull * degree : 0ull);
  return kGraphHeaderBytes + vertices * per_vertex;
}

std::vector<std::byte> serialize_graph(const DegGraph& graph, bool include_weights) {
  const std::uint32_t d = graph.edges_per_vertex();
  const std::uint32_t dim = graph.features().dim();
  for (VertexId v = 0; v < graph.size(); ++v) {
    if (graph.degree(v) != d) {
      throw Error(ErrorCode::InvalidArgument, "vertex " + std::to_string(v) + " is not saturated; graph not settled");
    }
  }
  if (include_weights && !graph.has_weights()) {
    throw Error(ErrorCode::SearchOnlyGraph, "graph has no weights to save");
  }

  ByteWriter w(graph_file_size(graph.size(), dim, d, include_weights));
  w.raw("DEG1");
  w.u32(kGraphFormatVersion);
  w.u8(static_cast<std::uint8_t>(graph.features().metric()));
  w.u32(dim);
  w.u64(graph.size());
  w.u32(d);
  w.u8(include_weights ? 1 : 0);
  for (VertexId v = 0; v < graph.size(); ++v) {
    for (float x : graph.feature(v)) w.f32(x);
    for (VertexId n : graph.neighbor_ids(v)) w.u32(n);
    if (include_weights) {
      for (float x : graph.neighbor_weights(v)) w.f32(x);
    }
  }
  return w.take();
}

void save_graph(const DegGraph& graph, const std::filesystem::path& path, bool include_weights) {
  write_file(path, serialize_graph(graph, include_weights));
}

DegGraph parse_graph(std::span<const std::byte> bytes, LoadMode mode) {
  if (bytes.size() < 4) throw Error(ErrorCode::TruncatedFile, "file shorter than the magic");
  if (std::memcmp(bytes.data(), "DEG1", 4) != 0) throw Error(ErrorCode::BadMagic, "not a DEG graph file");
  if (bytes.size() < kGraphHeaderBytes) throw Error(ErrorCode::TruncatedFile, "incomplete header");

  ByteReader r(bytes.subspan(4));
  const std::uint32_t version = r.u32();
  if (version != kGraphFormatVersion) {
    throw Error(ErrorCode::VersionMismatch, "file version " + std::to_string(version));
  }
  const std::uint8_t metric_tag = r.u8();
  const std::uint32_t dim = r.u32();
  const std::uint64_t vertices = r.u64();
  const std::uint32_t degree = r.u32();
  const std::uint8_t weights_flag = r.u8();

  if (metric_tag > 1) throw Error(ErrorCode::CorruptHeader, "unknown metric tag " + std::to_string(metric_tag));
  if (dim == 0) throw Error(ErrorCode::CorruptHeader, "dimension 0");
  if (degree < 4 || degree % 2 != 0) throw Error(ErrorCode::CorruptHeader, "degree " + std::to_string(degree));
  if (weights_flag > 1) throw Error(ErrorCode::CorruptHeader, "weights flag " + std::to_string(weights_flag));
  const bool weights = weights_flag == 1;

  const std::uint64_t per_vertex = 4ull * dim + 4ull * degree + (weights ? 4ull * degree : 0ull);
  const std::uint64_t payload = bytes.size() - kGraphHeaderBytes;
  if (vertices > payload / per_vertex) throw Error(ErrorCode::TruncatedFile, "payload shorter than header claims");
  if (vertices * per_vertex != payload) throw Error(ErrorCode::CorruptHeader, "trailing bytes after payload");

  const bool keep_weights = weights && mode == LoadMode::Full;
  const auto n = static_cast<std::size_t>(vertices);
  std::vector<float> features;
  features.reserve(n * dim);
  std::vector<VertexId> ids;
  ids.reserve(n * degree);
  std::vector<float> edge_weights;
  if (keep_weights) edge_weights.reserve(n * degree);

  for (std::size_t v = 0; v < n; ++v) {
    for (std::uint32_t i = 0; i < dim; ++i) features.push_back(r.f32());
    for (std::uint32_t i = 0; i < degree; ++i) {
      const std::uint32_t id = r.u32();
      if (id >= vertices) throw Error(ErrorCode::CorruptHeader, "neighbor id out of range at vertex " + std::to_string(v));
      ids.push_back(id);
    }
    if (weights) {
      for (std::uint32_t i = 0; i < degree; ++i) {
        const float w = r.f32();
        if (keep_weights) edge_weights.push_back(w);
      }
    }
  }

  std::vector<std::uint32_t> degrees(n, degree);
  FeatureStore store(dim, static_cast<Metric>(metric_tag), std::move(features));
  if (n == 0) {
    return DegGraph(std::move(store), degree);
  }
  return DegGraph::from_raw(std::move(store), degree, std::move(ids), std::move(edge_weights), std::move(degrees));
}

DegGraph load_graph(const std::filesystem::path& path, LoadMode mode) {
  return parse_graph(read_file(path), mode);
}

Subsample subsample(const FeatureStore& store, std::size_t n, std::uint64_t seed) {
  if (n > store.size()) {
    throw Error(ErrorCode::NTooLarge, std::to_string(n) + " > " + std::to_string(store.size()) + " rows");
  }
  std::vector<VertexId> order(store.size());
  std::iota(order.begin(), order.end(), VertexId{0});
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, order.size() - 1);
    std::swap(order[i], order[pick(rng)]);
  }
  order.resize(n);

  std::vector<float> rows;
  rows.reserve(n * store.dim());
  for (VertexId id : order) {
    const auto row = store.row(id);
    rows.insert(rows.end(), row.begin(), row.end());
  }
  return {FeatureStore(store.dim(), store.metric(), std::move(rows)), std::move(order)};
}

}  // namespace deg
