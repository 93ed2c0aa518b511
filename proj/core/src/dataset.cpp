// SPDX-License-Identifier: Apache-2.0
//
// beamloc: attention-aided beamspace localization on synthetic 5G uplink channels
// Copyright (C) 2026 beamloc contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "beamloc/harness/dataset.hpp"

#include <complex>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace beamloc::harness {

namespace {

using nlohmann::json;

std::string payload_name(RecordPayload p) {
  return p == RecordPayload::kComplex64Ctf ? "complex64" : "float32";
}

RecordPayload payload_from_name(const std::string& name) {
  if (name == "complex64") return RecordPayload::kComplex64Ctf;
  if (name == "float32") return RecordPayload::kFloat32Fingerprint;
  throw std::runtime_error("dataset: unknown payload dtype " + name);
}

template <typename T>
void put(std::ofstream& out, const T& v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T take(std::ifstream& in) {
  T v;
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
  return v;
}

}  // namespace

void write_dataset(const std::filesystem::path& dir, const Dataset& dataset) {
  std::filesystem::create_directories(dir);
  const DatasetManifest& m = dataset.manifest;
  if (static_cast<long>(dataset.records.size()) != m.count) {
    throw std::invalid_argument("write_dataset: record count != manifest");
  }

  json j;
  j["format_version"] = m.format_version;
  j["scenario"] = m.scenario;
  j["dtype"] = payload_name(m.payload);
  j["count"] = m.count;
  j["rows"] = m.rows;
  j["cols"] = m.cols;
  j["normalization_scale"] = m.normalization_scale;
  j["dt_s"] = m.dt_s;
  j["speed_mps"] = m.speed_mps;
  j["carrier_hz"] = m.carrier_hz;
  j["bandwidth_hz"] = m.bandwidth_hz;
  j["seed"] = m.seed;
  j["corrupt_fraction"] = m.corrupt_fraction;
  j["snr_db"] = m.snr_db;
  j["lap_count"] = m.lap_count;
  j["points_per_lap"] = m.points_per_lap;
  j["clean_threshold"] = m.clean_threshold;
  j["ue_ports"] = m.ue_ports;
  j["codebook_az"] = m.codebook_az;
  j["codebook_el"] = m.codebook_el;
  j["extents"] = {{"lo_x", m.extent_lo_x},
                  {"hi_x", m.extent_hi_x},
                  {"lo_y", m.extent_lo_y},
                  {"hi_y", m.extent_hi_y}};
  {
    std::ofstream out(dir / "manifest.json", std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write manifest.json");
    out << j.dump(2) << "\n";
  }

  std::ofstream out(dir / "records.bin", std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write records.bin");
  for (const DatasetRecord& r : dataset.records) {
    put(out, r.x);
    put(out, r.y);
    put(out, r.t);
    put(out, r.lap);
    put(out, r.flags);
    if (m.payload == RecordPayload::kComplex64Ctf) {
      if (r.ctf.rows() != m.rows || r.ctf.cols() != m.cols) {
        throw std::invalid_argument("write_dataset: ctf shape mismatch");
      }
      for (Eigen::Index c = 0; c < r.ctf.cols(); ++c) {
        for (Eigen::Index row = 0; row < r.ctf.rows(); ++row) {
          put(out, static_cast<float>(r.ctf(row, c).real()));
          put(out, static_cast<float>(r.ctf(row, c).imag()));
        }
      }
    } else {
      if (r.amp.rows() != m.rows || r.amp.cols() != m.cols) {
        throw std::invalid_argument("write_dataset: amp shape mismatch");
      }
      for (Eigen::Index c = 0; c < r.amp.cols(); ++c) {
        for (Eigen::Index row = 0; row < r.amp.rows(); ++row) {
          put(out, static_cast<float>(r.amp(row, c)));
        }
      }
    }
  }
  if (!out) throw std::runtime_error("short write to records.bin");
}

Dataset read_dataset(const std::filesystem::path& dir) {
  json j;
  {
    std::ifstream in(dir / "manifest.json", std::ios::binary);
    if (!in) {
      throw std::runtime_error("cannot read " + (dir / "manifest.json").string());
    }
    in >> j;
  }
  Dataset ds;
  DatasetManifest& m = ds.manifest;
  m.format_version = j.at("format_version").get<int>();
  if (m.format_version != 1) {
    throw std::runtime_error("dataset: unsupported format version");
  }
  m.scenario = j.at("scenario").get<std::string>();
  m.payload = payload_from_name(j.at("dtype").get<std::string>());
  m.count = j.at("count").get<long>();
  m.rows = j.at("rows").get<int>();
  m.cols = j.at("cols").get<int>();
  m.normalization_scale = j.at("normalization_scale").get<double>();
  m.dt_s = j.at("dt_s").get<double>();
  m.speed_mps = j.at("speed_mps").get<double>();
  m.carrier_hz = j.at("carrier_hz").get<double>();
  m.bandwidth_hz = j.at("bandwidth_hz").get<double>();
  m.seed = j.at("seed").get<std::uint64_t>();
  m.corrupt_fraction = j.at("corrupt_fraction").get<double>();
  m.snr_db = j.at("snr_db").get<double>();
  m.lap_count = j.at("lap_count").get<int>();
  m.points_per_lap = j.at("points_per_lap").get<int>();
  m.clean_threshold = j.at("clean_threshold").get<int>();
  m.ue_ports = j.at("ue_ports").get<int>();
  m.codebook_az = j.at("codebook_az").get<int>();
  m.codebook_el = j.at("codebook_el").get<int>();
  m.extent_lo_x = j.at("extents").at("lo_x").get<double>();
  m.extent_hi_x = j.at("extents").at("hi_x").get<double>();
  m.extent_lo_y = j.at("extents").at("lo_y").get<double>();
  m.extent_hi_y = j.at("extents").at("hi_y").get<double>();

  std::ifstream in(dir / "records.bin", std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot read " + (dir / "records.bin").string());
  }
  ds.records.resize(static_cast<std::size_t>(m.count));
  for (DatasetRecord& r : ds.records) {
    r.x = take<double>(in);
    r.y = take<double>(in);
    r.t = take<double>(in);
    r.lap = take<std::uint32_t>(in);
    r.flags = take<std::uint32_t>(in);
    if (m.payload == RecordPayload::kComplex64Ctf) {
      r.ctf.resize(m.rows, m.cols);
      for (Eigen::Index c = 0; c < m.cols; ++c) {
        for (Eigen::Index row = 0; row < m.rows; ++row) {
          const float re = take<float>(in);
          const float im = take<float>(in);
          r.ctf(row, c) = std::complex<double>(re, im);
        }
      }
    } else {
      r.amp.resize(m.rows, m.cols);
      for (Eigen::Index c = 0; c < m.cols; ++c) {
        for (Eigen::Index row = 0; row < m.rows; ++row) {
          r.amp(row, c) = static_cast<double>(take<float>(in));
        }
      }
    }
    if (!in) throw std::runtime_error("dataset: records.bin truncated");
  }
  char extra;
  if (in.read(&extra, 1)) {
    throw std::runtime_error("dataset: records.bin larger than declared");
  }
  return ds;
}

}  // namespace beamloc::harness
