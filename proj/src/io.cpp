#include "bgl/io.hpp"

#include <fmt/format.h>

#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

#include "bgl/axisym_solver.hpp"
#include "bgl/error.hpp"
#include "bgl/strip_solver.hpp"
#include "bgl/torus_solver.hpp"

namespace bgl {
namespace {

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i];
  return s;
}

void put_le(std::string& out, double x) {
  auto u = std::bit_cast<std::uint64_t>(x);
  if constexpr (std::endian::native == std::endian::big) u = __builtin_bswap64(u);
  char b[8];
  std::memcpy(b, &u, 8);
  out.append(b, 8);
}

double get_le(const char* p) {
  std::uint64_t u = 0;
  std::memcpy(&u, p, 8);
  if constexpr (std::endian::native == std::endian::big) u = __builtin_bswap64(u);
  return std::bit_cast<double>(u);
}

std::pair<const ScalarField*, const ScalarField*> prognostic(const SimState& s) {
  if (const auto* t = std::get_if<TorusState>(&s)) return {&t->rho, &t->omega};
  if (const auto* t = std::get_if<StripState>(&s)) return {&t->rho, &t->omega};
  const auto& a = std::get<AxisymState>(s);
  return {&a.utheta, &a.omegatheta};
}

}  // namespace

std::string csv_header_line(const DiagnosticsConfig& cfg) { return join(csv_columns(cfg)) + "\n"; }

std::string csv_row_line(const DiagnosticsRow& row) {
  std::string s;
  const auto v = csv_values(row);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    if (v[i]) s += fmt::format("{:.17g}", *v[i]);
  }
  return s + "\n";
}

std::string series_csv(const std::vector<DiagnosticsRow>& rows, const DiagnosticsConfig& cfg) {
  std::string s = csv_header_line(cfg);
  for (const auto& r : rows) s += csv_row_line(r);
  return s;
}

int CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == name) return static_cast<int>(i);
  }
  return -1;
}

CsvTable parse_csv(const std::string& text) {
  CsvTable t;
  std::stringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (line.back() == ',') cells.emplace_back();
    if (t.columns.empty()) {
      t.columns = cells;
      continue;
    }
    if (cells.size() != t.columns.size()) {
      throw InputError(fmt::format("csv line {}: {} fields, header has {}", line_no, cells.size(), t.columns.size()));
    }
    std::vector<std::optional<double>> row;
    for (const auto& c : cells) {
      if (c.empty()) {
        row.emplace_back();
        continue;
      }
      double x = 0.0;
      const auto r = std::from_chars(c.data(), c.data() + c.size(), x);
      if (r.ec != std::errc() || r.ptr != c.data() + c.size()) {
        throw InputError(fmt::format("csv line {}: bad number '{}'", line_no, c));
      }
      row.emplace_back(x);
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

std::string encode_checkpoint(const Checkpoint& c) {
  const auto [f1, f2] = prognostic(c.state);
  const Grid& g = f1->grid();
  int n1 = 0, n2 = 0;
  if (const auto* t = std::get_if<TorusGrid>(&g)) std::tie(n1, n2) = std::pair{t->nx, t->ny};
  else if (const auto* s = std::get_if<StripGrid>(&g)) std::tie(n1, n2) = std::pair{s->nx, s->nz};
  else std::tie(n1, n2) = std::pair{std::get<AnnulusGrid>(g).nr, std::get<AnnulusGrid>(g).nz};
  std::string out = fmt::format("BGL1 {} {} {} {} {}\n", model_tag(c.model), n1, n2, state_time(c.state), c.nu);
  out.reserve(out.size() + 16 * f1->size() + 64);
  for (double x : f1->values()) put_le(out, x);
  for (double x : f2->values()) put_le(out, x);
  if (c.tracers && !c.tracers->degenerate) {
    put_le(out, static_cast<double>(c.tracers->x2.size()));
    for (double x : c.tracers->x2) put_le(out, x);
  }
  return out;
}

Checkpoint decode_checkpoint(const std::string& bytes) {
  const auto nl = bytes.find('\n');
  if (nl == std::string::npos) throw IoError("checkpoint has no header line");
  std::stringstream hs(bytes.substr(0, nl));
  std::string magic, model;
  int n1 = 0, n2 = 0;
  std::string ts, nus;
  hs >> magic >> model >> n1 >> n2 >> ts >> nus;
  if (magic != "BGL1" || !hs) throw IoError("not a BGL1 checkpoint");
  Model mtag{};
  double nu = 0.0, t = 0.0;
  std::optional<TracerSet> tracers;
  try {
    mtag = model_from_tag(model);
  } catch (const InputError& e) {
    throw IoError(e.what());
  }
  auto parse_num = [](const std::string& s, double& x) {
    const auto r = std::from_chars(s.data(), s.data() + s.size(), x);
    if (r.ec != std::errc() || r.ptr != s.data() + s.size()) throw IoError("bad number in checkpoint header");
  };
  parse_num(ts, t);
  parse_num(nus, nu);
  Grid g = TorusGrid{};
  try {
    if (mtag == Model::strip_inviscid) g = StripGrid::make(n1, n2);
    else if (mtag == Model::axisym_euler) g = AnnulusGrid::make(n1, n2);
    else g = TorusGrid::make(n1, n2);
  } catch (const ConfigError& e) {
    throw IoError(fmt::format("checkpoint grid: {}", e.what()));
  }
  const std::size_t n = grid_size(g);
  const char* p = bytes.data() + nl + 1;
  const std::size_t avail = (bytes.size() - nl - 1);
  if (avail % 8 != 0 || avail < 16 * n) throw IoError("checkpoint data is truncated");
  std::vector<double> a(n), b(n);
  for (std::size_t i = 0; i < n; ++i) a[i] = get_le(p + 8 * i);
  for (std::size_t i = 0; i < n; ++i) b[i] = get_le(p + 8 * (n + i));
  std::size_t extra = avail / 8 - 2 * n;
  if (extra > 0) {
    const double k = get_le(p + 16 * n);
    if (k < 0 || k != std::floor(k) || static_cast<std::size_t>(k) + 1 != extra) {
      throw IoError("checkpoint tracer block is malformed");
    }
    TracerSet tr;
    for (std::size_t i = 0; i < static_cast<std::size_t>(k); ++i) {
      tr.x2.push_back(get_le(p + 16 * n + 8 * (i + 1)));
      tr.labels.push_back(i == 0 ? "a" : i == 1 ? "b" : fmt::format("p{}", i));
    }
    tracers = std::move(tr);
  }
  ScalarField f1(g, std::move(a)), f2(g, std::move(b));
  auto state = [&]() -> SimState {
    if (mtag == Model::strip_inviscid) return make_strip_state(t, std::move(f1), std::move(f2));
    if (mtag == Model::axisym_euler) return make_axisym_state(t, std::move(f1), std::move(f2));
    return make_torus_state(t, std::move(f1), std::move(f2));
  };
  return Checkpoint{mtag, nu, state(), std::move(tracers)};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(fmt::format("cannot read '{}'", path));
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(fmt::format("cannot write '{}'", path));
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw IoError(fmt::format("write to '{}' failed", path));
}

void write_checkpoint(const std::string& path, const Checkpoint& c) { write_file(path, encode_checkpoint(c)); }

Checkpoint read_checkpoint(const std::string& path) { return decode_checkpoint(read_file(path)); }

}  // namespace bgl
