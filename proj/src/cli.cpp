#include "umbilic/cli.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>
#include <variant>

#include <json.hpp>

#include "umbilic/ellipsoid.hpp"
#include "umbilic/invariants.hpp"
#include "umbilic/sampling.hpp"
#include "umbilic/tracer.hpp"
#include "umbilic/verify.hpp"

namespace umbilic {

namespace {

using json = nlohmann::json;
using Cell = std::variant<double, long long, std::string>;

constexpr double kPi = 3.14159265358979323846264338327950288;

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

std::string csv_cell(const Cell& c) {
  if (const double* d = std::get_if<double>(&c)) return fmt(*d);
  if (const long long* i = std::get_if<long long>(&c)) return std::to_string(*i);
  const std::string& s = std::get<std::string>(c);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return q + "\"";
}

json json_cell(const Cell& c) {
  if (const double* d = std::get_if<double>(&c)) return *d;
  if (const long long* i = std::get_if<long long>(&c)) return *i;
  return std::get<std::string>(c);
}

// Opens the output file, or hands back `fallback` when no path was given.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : os_(&fallback) {
    if (path.empty() || path == "-") return;
    file_ = std::make_unique<std::ofstream>(path);
    if (!*file_) throw UsageError("cannot open output file '" + path + "' for writing");
    os_ = file_.get();
  }
  std::ostream& get() { return *os_; }
  void finish() {
    os_->flush();
    if (!*os_) throw UsageError("write to output failed");
  }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* os_;
};

void write_csv(std::ostream& os, const std::string& command, const std::vector<std::string>& header,
               const std::vector<std::vector<Cell>>& rows) {
  os << "# cr_umbilic " << command << " format=" << kFormatVersion << "\n";
  for (std::size_t k = 0; k < header.size(); ++k) os << (k ? "," : "") << header[k];
  os << "\n";
  for (const auto& r : rows) {
    for (std::size_t k = 0; k < r.size(); ++k) os << (k ? "," : "") << csv_cell(r[k]);
    os << "\n";
  }
}

json json_rows(const std::vector<std::string>& header, const std::vector<std::vector<Cell>>& rows) {
  json arr = json::array();
  for (const auto& r : rows) {
    json o = json::object();
    for (std::size_t k = 0; k < header.size(); ++k) o[header[k]] = json_cell(r[k]);
    arr.push_back(std::move(o));
  }
  return arr;
}

json document(const std::string& command, const RunConfig& cfg) {
  json d;
  d["format_version"] = kFormatVersion;
  d["command"] = command;
  d["params"] = {{"a", cfg.a}, {"b", cfg.b}};
  return d;
}

EllipsoidParams params_of(const RunConfig& cfg) { return {cfg.a, cfg.b}; }

}  // namespace

void RunConfig::validate() const {
  try {
    params_of(*this).validate();
  } catch (const InvalidParameters& e) {
    throw UsageError(std::string("parameter out of range: ") + e.what());
  }
  if (grid < 2) throw UsageError("--grid must be >= 2");
  if (samples < 0) throw UsageError("--samples must be >= 0");
  if (!(tol > 0.0)) throw UsageError("--tol must be > 0");
  if (seed_grid < 8) throw UsageError("--seed-grid must be >= 8");
  if (!(step > 0.0)) throw UsageError("--step must be > 0");
}

Command parse_command(const std::string& s) {
  if (s == "invariants") return Command::Invariants;
  if (s == "locus") return Command::Locus;
  if (s == "trace") return Command::Trace;
  if (s == "verify") return Command::Verify;
  throw UsageError("unknown command '" + s + "'");
}

Format parse_format(const std::string& s) {
  if (s == "csv") return Format::Csv;
  if (s == "json") return Format::Json;
  throw UsageError("unknown format '" + s + "' (csv or json)");
}

int cmd_invariants(const RunConfig& cfg, std::ostream& data, std::ostream&) {
  const EllipsoidParams e = params_of(cfg);
  const HolomorphicPolynomial f = e.f();
  const std::vector<std::string> header{"eta", "phi", "x", "y", "u", "v", "J", "R", "abs_A11", "re_Q11", "im_Q11"};
  std::vector<std::vector<Cell>> rows;
  const int n = cfg.grid;
  for (int i = 0; i < n; ++i) {
    const double eta = 0.5 * kPi * i / (n - 1);
    for (int j = 0; j < n; ++j) {
      const double phi = 2.0 * kPi * j / n;
      const Point4 p = torus_chart(e, eta, phi);
      const InvariantReport r = cartan_q11(contractions(assemble_rho_jet(p, f.jet(p))));
      const double J = contractions(assemble_rho_jet(p, f.jet(p))).J;
      rows.push_back({eta, phi, p.x(), p.y(), p.u(), p.v(), J, r.R, std::abs(r.A11), r.Q11.real(), r.Q11.imag()});
    }
  }
  Sink sink(cfg.output_path, data);
  if (cfg.format == Format::Csv) {
    write_csv(sink.get(), "invariants", header, rows);
  } else {
    json d = document("invariants", cfg);
    d["grid"] = n;
    d["rows"] = json_rows(header, rows);
    sink.get() << d.dump(1) << "\n";
  }
  sink.finish();
  return kExitOk;
}

int cmd_locus(const RunConfig& cfg, std::ostream& data, std::ostream& log) {
  const EllipsoidParams e = params_of(cfg);
  const int n = cfg.samples > 0 ? cfg.samples : kDefaultCurveSamples;
  std::vector<LocusCurve> curves;
  if (e.b == 0.0)
    curves = special_locus_b0(e.a, n);
  else if (e.b == e.a)
    curves = special_locus_ba(e.a, n);
  else {
    curves = gamma_loci(e, n);
    log << "notice: for 0 < b < a the variety V has no closed form; run `trace` to extract it\n";
  }

  const HolomorphicPolynomial f = e.f();
  const std::vector<std::string> header{"curve", "kind", "label", "t", "x", "y", "u", "v",
                                        "rho_residual", "defining_residual", "abs_Q11"};
  std::vector<std::vector<Cell>> rows;
  json jcurves = json::array();
  for (std::size_t k = 0; k < curves.size(); ++k) {
    const LocusCurve& c = curves[k];
    std::vector<std::vector<Cell>> crow;
    for (const LocusVertex& v : c.polyline) {
      const double q = std::abs(cartan_q11(contractions(assemble_rho_jet(v.p, f.jet(v.p)))).Q11);
      crow.push_back({static_cast<long long>(k), to_string(c.kind), c.label(), v.t, v.p.x(), v.p.y(), v.p.u(),
                      v.p.v(), v.rho_residual, v.defining_residual, q});
    }
    json jc;
    jc["kind"] = to_string(c.kind);
    jc["label"] = c.label();
    jc["tau"] = c.tau ? json(*c.tau) : json(nullptr);
    jc["sign"] = c.sign ? json(*c.sign) : json(nullptr);
    jc["s0"] = c.root ? json(*c.root) : json(nullptr);
    jc["vertices"] = json_rows(header, crow);
    jcurves.push_back(std::move(jc));
    rows.insert(rows.end(), crow.begin(), crow.end());
  }
  log << "locus: " << curves.size() << " curves\n";

  Sink sink(cfg.output_path, data);
  if (cfg.format == Format::Csv) {
    write_csv(sink.get(), "locus", header, rows);
  } else {
    json d = document("locus", cfg);
    d["curves"] = std::move(jcurves);
    if (e.b != 0.0 && e.b != e.a) d["notice"] = "V requires the trace command";
    sink.get() << d.dump(1) << "\n";
  }
  sink.finish();
  return kExitOk;
}

int cmd_trace(const RunConfig& cfg, std::ostream& data, std::ostream& log) {
  const EllipsoidParams e = params_of(cfg);
  if (e.b == 0.0 || e.b == e.a) {
    throw UsageError("trace needs 0 < b < a; for b = 0 or b = a the locus has closed forms, use `locus`");
  }
  TraceConfig tc;
  tc.newton_tol = cfg.tol;
  tc.seed_grid = cfg.seed_grid;
  tc.step_len = cfg.step;
  const TracedVariety v = trace_variety(e, tc);

  const std::vector<std::string> header{"component", "vertex", "closed", "x", "y", "u", "v", "rho_residual",
                                        "re_residual", "im_residual", "gamma_distance", "singular"};
  std::vector<std::vector<Cell>> rows;
  json jcomp = json::array();
  for (std::size_t k = 0; k < v.components.size(); ++k) {
    const TracedComponent& c = v.components[k];
    std::vector<std::vector<Cell>> crow;
    for (std::size_t m = 0; m < c.vertices.size(); ++m) {
      const TracedVertex& x = c.vertices[m];
      crow.push_back({static_cast<long long>(k), static_cast<long long>(m), static_cast<long long>(c.closed), x.p.x(),
                      x.p.y(), x.p.u(), x.p.v(), x.rho_residual, x.re_residual, x.im_residual, x.gamma_distance,
                      static_cast<long long>(x.singular)});
    }
    json jc;
    jc["closed"] = c.closed;
    jc["split"] = c.split;
    jc["vertices"] = json_rows(header, crow);
    jcomp.push_back(std::move(jc));
    rows.insert(rows.end(), crow.begin(), crow.end());
  }
  log << "trace: " << v.components.size() << " components, " << v.vertex_count() << " vertices, "
      << v.seeds_converged << " seeds\n";
  if (v.components.empty()) {
    log << "trace: no component found\n";
    return kExitNumerical;
  }

  Sink sink(cfg.output_path, data);
  if (cfg.format == Format::Csv) {
    write_csv(sink.get(), "trace", header, rows);
  } else {
    json d = document("trace", cfg);
    d["components"] = std::move(jcomp);
    sink.get() << d.dump(1) << "\n";
  }
  sink.finish();
  return kExitOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& data, std::ostream& log) {
  VerifyOptions opt;
  opt.suites = cfg.suites;
  if (cfg.samples > 0) {
    opt.points = cfg.samples;
    opt.oracle_points = std::max(1, cfg.samples / 10);
  }
  opt.inject_sign_error = cfg.inject_sign_error;
  std::vector<SuiteResult> res;
  try {
    res = run_suites(opt);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  bool all = true;
  log << std::left << std::setw(18) << "suite" << std::setw(6) << "pass" << std::setw(10) << "checked"
      << "detail\n";
  for (const SuiteResult& r : res) {
    all = all && r.passed;
    log << std::left << std::setw(18) << r.name << std::setw(6) << (r.passed ? "ok" : "FAIL") << std::setw(10)
        << r.checked << r.detail << "\n";
  }
  if (!cfg.output_path.empty()) {
    Sink sink(cfg.output_path, data);
    const std::vector<std::string> header{"suite", "passed", "checked", "worst_ratio", "detail"};
    std::vector<std::vector<Cell>> rows;
    for (const SuiteResult& r : res)
      rows.push_back({r.name, static_cast<long long>(r.passed), static_cast<long long>(r.checked), r.worst, r.detail});
    if (cfg.format == Format::Csv) {
      write_csv(sink.get(), "verify", header, rows);
    } else {
      json d = document("verify", cfg);
      d["suites"] = json_rows(header, rows);
      sink.get() << d.dump(1) << "\n";
    }
    sink.finish();
  }
  return all ? kExitOk : kExitNumerical;
}

int run_command(const RunConfig& cfg, std::ostream& data, std::ostream& log) {
  try {
    cfg.validate();
    switch (cfg.command) {
      case Command::Invariants: return cmd_invariants(cfg, data, log);
      case Command::Locus: return cmd_locus(cfg, data, log);
      case Command::Trace: return cmd_trace(cfg, data, log);
      case Command::Verify: return cmd_verify(cfg, data, log);
    }
  } catch (const UsageError& e) {
    log << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InvalidParameters& e) {
    log << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const SphereEverywhereUmbilical& e) {
    log << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    log << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitUsage;
}

int CsvTable::column(const std::string& name) const {
  for (std::size_t k = 0; k < header.size(); ++k)
    if (header[k] == name) return static_cast<int>(k);
  return -1;
}

CsvTable read_csv(std::istream& in) {
  auto split = [](const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (std::size_t k = 0; k < line.size(); ++k) {
      const char c = line[k];
      if (quoted) {
        if (c == '"' && k + 1 < line.size() && line[k + 1] == '"') {
          cur += '"';
          ++k;
        } else if (c == '"') {
          quoted = false;
        } else {
          cur += c;
        }
      } else if (c == '"') {
        quoted = true;
      } else if (c == ',') {
        out.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    out.push_back(cur);
    return out;
  };
  CsvTable t;
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!have_header) {
      t.header = split(line);
      have_header = true;
    } else {
      t.rows.push_back(split(line));
    }
  }
  return t;
}

}  // namespace umbilic
