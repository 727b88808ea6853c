#pragma once

// Self-describing records for sampled tables.
//
// JSON:   {"kind", "dim", "M" | "N", "shape", "values": [[re, im], ...]}
// Binary: "TFIO" | u32 version | u32 kind | u32 dim | u32 extent |
//         u64 count | count * (f64 re, f64 im), little-endian IEEE 754.
//
// `extent` is M for grid-indexed data and N for box-indexed data. Values are
// row-major with axis 0 slowest.

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "torfio/core/fourier.hpp"

namespace torfio {

enum class RecordKind : std::uint32_t {
  grid_function = 1,
  spectral_function = 2,
  kernel_table = 3,
  symbol_table = 4,
};

inline const char* record_kind_name(RecordKind k) {
  switch (k) {
    case RecordKind::grid_function: return "grid_function";
    case RecordKind::spectral_function: return "spectral_function";
    case RecordKind::kernel_table: return "kernel_table";
    case RecordKind::symbol_table: return "symbol_table";
  }
  return "unknown";
}

struct Record {
  RecordKind kind = RecordKind::grid_function;
  int dim = 1;
  int extent = 0;  // M or N
  std::vector<cplx> values;
};

inline Record to_record(const GridFunction& f) {
  return {RecordKind::grid_function, f.grid.dim, f.grid.samples, f.values};
}
inline Record to_record(const SpectralFunction& f) {
  return {RecordKind::spectral_function, f.box.dim, f.box.radius, f.coeffs};
}

inline GridFunction grid_function_from(const Record& r) {
  if (r.kind != RecordKind::grid_function) throw DomainError("record is not a grid_function");
  return GridFunction(TorusGrid(r.dim, r.extent), r.values);
}
inline SpectralFunction spectral_function_from(const Record& r) {
  if (r.kind != RecordKind::spectral_function) throw DomainError("record is not a spectral_function");
  return SpectralFunction(LatticeBox(r.dim, r.extent), r.values);
}

inline nlohmann::json record_to_json(const Record& r) {
  nlohmann::json j;
  j["kind"] = record_kind_name(r.kind);
  j["dim"] = r.dim;
  const bool grid_indexed = r.kind == RecordKind::grid_function || r.kind == RecordKind::kernel_table;
  j[grid_indexed ? "M" : "N"] = r.extent;
  auto values = nlohmann::json::array();
  for (const auto& v : r.values) values.push_back({v.real(), v.imag()});
  j["values"] = std::move(values);
  return j;
}

inline Record record_from_json(const nlohmann::json& j) {
  Record r;
  const std::string kind = j.at("kind").get<std::string>();
  bool found = false;
  for (auto k : {RecordKind::grid_function, RecordKind::spectral_function, RecordKind::kernel_table,
                 RecordKind::symbol_table}) {
    if (kind == record_kind_name(k)) {
      r.kind = k;
      found = true;
    }
  }
  if (!found) throw DomainError("record: unknown kind '" + kind + "'");
  r.dim = j.at("dim").get<int>();
  r.extent = j.contains("M") ? j.at("M").get<int>() : j.at("N").get<int>();
  for (const auto& v : j.at("values")) r.values.emplace_back(v.at(0).get<double>(), v.at(1).get<double>());
  return r;
}

namespace detail {

static_assert(std::endian::native == std::endian::little, "binary records assume a little-endian host");

template <typename T>
void put(std::ostream& os, T v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}
template <typename T>
T get(std::istream& is) {
  T v{};
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!is) throw DomainError("binary record: truncated input");
  return v;
}

}  // namespace detail

inline void write_binary(std::ostream& os, const Record& r) {
  os.write("TFIO", 4);
  detail::put<std::uint32_t>(os, 1);
  detail::put<std::uint32_t>(os, static_cast<std::uint32_t>(r.kind));
  detail::put<std::uint32_t>(os, static_cast<std::uint32_t>(r.dim));
  detail::put<std::uint32_t>(os, static_cast<std::uint32_t>(r.extent));
  detail::put<std::uint64_t>(os, r.values.size());
  for (const auto& v : r.values) {
    detail::put<double>(os, v.real());
    detail::put<double>(os, v.imag());
  }
}

inline Record read_binary(std::istream& is) {
  std::array<char, 4> magic{};
  is.read(magic.data(), 4);
  if (!is || std::memcmp(magic.data(), "TFIO", 4) != 0) throw DomainError("binary record: bad magic");
  if (detail::get<std::uint32_t>(is) != 1) throw DomainError("binary record: unsupported version");
  Record r;
  r.kind = static_cast<RecordKind>(detail::get<std::uint32_t>(is));
  r.dim = static_cast<int>(detail::get<std::uint32_t>(is));
  r.extent = static_cast<int>(detail::get<std::uint32_t>(is));
  const auto count = detail::get<std::uint64_t>(is);
  r.values.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    double re = detail::get<double>(is);
    double im = detail::get<double>(is);
    r.values.emplace_back(re, im);
  }
  return r;
}

}  // namespace torfio
