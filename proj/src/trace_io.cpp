#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "pesmc/config.hpp"

#ifndef PESMC_VERSION
#define PESMC_VERSION "0.0.0"
#endif

namespace pesmc {

using nlohmann::json;

namespace {

std::string format_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
  return out;
}

void close_out(std::ofstream& out, const std::filesystem::path& path) {
  out.close();
  if (!out) throw Error(ErrorKind::Io, "write failed for " + path.string());
}

void write_row(std::ofstream& out, std::initializer_list<double> values) {
  bool first = true;
  for (double v : values) {
    if (!first) out << ',';
    out << format_value(v);
    first = false;
  }
  out << '\n';
}

std::vector<std::vector<double>> read_csv(const std::filesystem::path& path,
                                          std::string_view header, std::size_t columns) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != header) {
    throw Error(ErrorKind::Parse, path.string() + ": expected header '" + std::string(header) + "'");
  }
  std::vector<std::vector<double>> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(cell, &used));
        if (used != cell.size()) throw std::invalid_argument(cell);
      } catch (const std::exception&) {
        throw Error(ErrorKind::Parse,
                    path.string() + ":" + std::to_string(line_no) + ": bad number '" + cell + "'");
      }
    }
    if (row.size() != columns) {
      throw Error(ErrorKind::Parse, path.string() + ":" + std::to_string(line_no) + ": expected " +
                                        std::to_string(columns) + " columns");
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

std::filesystem::path TracePaths::snapshot(std::size_t index) const {
  char suffix[32];
  std::snprintf(suffix, sizeof suffix, ".snap%04zu.csv", index);
  auto p = trace;
  p.replace_extension();
  p += suffix;
  return p;
}

TracePaths trace_paths(const std::filesystem::path& trace) {
  TracePaths p;
  p.trace = trace;
  auto stem = trace;
  stem.replace_extension();
  p.metadata = stem;
  p.metadata += ".meta.json";
  p.remainder = stem;
  p.remainder += ".remainder.csv";
  return p;
}

void write_trace(const SimTrace& trace, const std::filesystem::path& path) {
  const TracePaths paths = trace_paths(path);
  {
    auto out = open_out(paths.trace);
    out << kTraceHeader << '\n';
    for (std::size_t i = 0; i < trace.size(); ++i) {
      write_row(out, {trace.times[i], trace.s[i], trace.omega[i], trace.d[i], trace.norm_u_l2[i],
                      trace.norm_v_l2[i], trace.norm_u_h1[i]});
    }
    close_out(out, paths.trace);
  }
  json meta;
  meta["artifact"] = "pesmc";
  meta["version"] = PESMC_VERSION;
  meta["config"] = to_json(trace.config);
  meta["rows"] = trace.size();
  meta["trace"] = paths.trace.filename().string();
  if (!trace.remainder.empty()) {
    auto out = open_out(paths.remainder);
    out << kRemainderHeader << '\n';
    for (std::size_t i = 0; i < trace.remainder.size(); ++i) {
      write_row(out, {trace.times[i], trace.remainder[i]});
    }
    close_out(out, paths.remainder);
    meta["remainder"] = paths.remainder.filename().string();
  }
  json snaps = json::array();
  for (std::size_t k = 0; k < trace.snapshots.size(); ++k) {
    const Snapshot& snap = trace.snapshots[k];
    const auto file = paths.snapshot(k);
    auto out = open_out(file);
    out << kSnapshotHeader << '\n';
    for (std::size_t i = 0; i < snap.u.size(); ++i) {
      write_row(out, {snap.u.grid().x(i), snap.u[i], snap.v[i]});
    }
    close_out(out, file);
    snaps.push_back({{"t", snap.t}, {"file", file.filename().string()}});
  }
  meta["snapshots"] = snaps;
  auto out = open_out(paths.metadata);
  out << meta.dump(2) << '\n';
  close_out(out, paths.metadata);
}

SimTrace read_trace(const std::filesystem::path& path) {
  const TracePaths paths = trace_paths(path);
  SimTrace trace;
  {
    std::ifstream in(paths.metadata);
    if (!in) throw Error(ErrorKind::Io, "cannot open trace metadata " + paths.metadata.string());
    json meta;
    try {
      meta = json::parse(in);
    } catch (const json::parse_error& e) {
      throw Error(ErrorKind::Parse, paths.metadata.string() + ": " + e.what());
    }
    if (!meta.contains("config")) {
      throw Error(ErrorKind::Parse, paths.metadata.string() + ": missing config");
    }
    trace.config = resolve_config(meta["config"]);
    if (meta.contains("remainder")) {
      for (const auto& row : read_csv(paths.remainder, kRemainderHeader, 2)) {
        trace.remainder.push_back(row[1]);
      }
    }
  }
  for (const auto& row : read_csv(paths.trace, kTraceHeader, 7)) {
    trace.times.push_back(row[0]);
    trace.s.push_back(row[1]);
    trace.omega.push_back(row[2]);
    trace.d.push_back(row[3]);
    trace.norm_u_l2.push_back(row[4]);
    trace.norm_v_l2.push_back(row[5]);
    trace.norm_u_h1.push_back(row[6]);
  }
  if (!trace.remainder.empty() && trace.remainder.size() != trace.size()) {
    throw Error(ErrorKind::Parse, paths.remainder.string() + ": row count differs from trace");
  }
  return trace;
}

}  // namespace pesmc
