#pragma once

// Command-line front end. Exit codes: 0 success, 2 input/validation error,
// 3 numeric failure.

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dhloc/dhloc.hpp"

namespace dhloc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitNumeric = 3;

/// %.15g without locale dependence.
inline std::string format_number(double x) {
  if (x == 0.0) x = 0.0;  // drop the sign of negative zero
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 15);
  return std::string(buf, end);
}

/// x rounded to 15 significant digits, so that JSON emits at most 15.
inline double round15(double x) {
  const std::string s = format_number(x);
  double y = 0.0;
  std::from_chars(s.data(), s.data() + s.size(), y);
  return y;
}

inline double parse_real(const std::string& text, const std::string& what) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (first != last && *first == '+') ++first;
  auto [end, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || end != last || !std::isfinite(v))
    throw InputError(what + ": '" + text + "' is not a number");
  return v;
}

inline long parse_long(const std::string& text, const std::string& what) {
  long v = 0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || end != text.data() + text.size() || text.empty())
    throw InputError(what + ": '" + text + "' is not an integer");
  return v;
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

/// "start:end:step" -> start, start+step, ..., end (inclusive up to rounding).
inline std::vector<double> parse_grid(const std::string& spec) {
  const auto parts = split(spec, ':');
  if (parts.size() != 3) throw InputError("--grid expects start:end:step");
  const double a = parse_real(parts[0], "--grid start");
  const double b = parse_real(parts[1], "--grid end");
  const double s = parse_real(parts[2], "--grid step");
  if (!(s > 0.0)) throw InputError("--grid step must be > 0");
  if (!(a < b)) throw InputError("--grid start must be < end");
  const long count = static_cast<long>(std::floor((b - a) / s + 1e-9)) + 1;
  if (count > 10000000) throw InputError("--grid has too many points");
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(count));
  for (long i = 0; i < count; ++i) grid.push_back(round15(a + static_cast<double>(i) * s));
  return grid;
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

struct SpaceSource {
  std::string builtin;
  std::string file;

  QHSpace load() const {
    if (!builtin.empty() && !file.empty())
      throw InputError("--builtin and --space are mutually exclusive");
    if (!builtin.empty()) return builtin_by_name(builtin);
    if (!file.empty()) return load_space_file(file);
    throw InputError("one of --builtin or --space is required");
  }
};

enum class Mode { residue, fourier, both };
enum class Format { csv, json };

struct CliConfig {
  SpaceSource source;
  Mode mode = Mode::residue;
  std::string t_single;
  std::string grid;
  SummationMethod method;
  EvalOptions eval;
  std::string out_path;
  Format format = Format::csv;
};

/// A table cell: a number, text, or empty.
struct Cell {
  std::optional<double> number;
  std::string text;
};

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  std::string to_csv() const {
    std::string s;
    for (std::size_t i = 0; i < columns.size(); ++i) {
      if (i) s += ',';
      s += csv_field(columns[i]);
    }
    s += '\n';
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) s += ',';
        s += row[i].number ? format_number(*row[i].number) : csv_field(row[i].text);
      }
      s += '\n';
    }
    return s;
  }

  std::string to_json(const std::string& command, const std::string& space) const {
    nlohmann::ordered_json doc;
    doc["command"] = command;
    if (!space.empty()) doc["space"] = space;
    doc["columns"] = columns;
    auto rows_json = nlohmann::ordered_json::array();
    for (const auto& row : rows) {
      nlohmann::ordered_json obj;
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (row[i].number)
          obj[columns[i]] = round15(*row[i].number);
        else if (row[i].text.empty())
          obj[columns[i]] = nullptr;
        else
          obj[columns[i]] = row[i].text;
      }
      rows_json.push_back(std::move(obj));
    }
    doc["rows"] = std::move(rows_json);
    return doc.dump(2) + "\n";
  }
};

inline void emit(const Table& table, const CliConfig& cfg, const std::string& command,
                 const std::string& space_name, std::ostream& out) {
  const std::string doc =
      cfg.format == Format::csv ? table.to_csv() : table.to_json(command, space_name);
  if (cfg.out_path.empty()) {
    out << doc;
    return;
  }
  std::ofstream f(cfg.out_path, std::ios::binary);
  if (!f) throw InputError("cannot open output file '" + cfg.out_path + "'");
  f << doc;
}

inline int cmd_eval(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  const QHSpace space = cfg.source.load();
  if (cfg.t_single.empty() == cfg.grid.empty())
    throw InputError("exactly one of --t or --grid is required");
  const bool single = !cfg.t_single.empty();
  std::vector<double> grid;
  if (single) {
    grid.push_back(parse_real(cfg.t_single, "--t"));
  } else {
    grid = parse_grid(cfg.grid);
  }
  for (double t : grid)
    if (!(t > 0.0 && t < 1.0)) throw InputError("t out of open alcove: " + format_number(t));
  cfg.method.validate();
  if (!(cfg.eval.imag_tolerance > 0.0)) throw InputError("--imag-tol must be positive");

  const bool want_residue = cfg.mode != Mode::fourier;
  const bool want_fourier = cfg.mode != Mode::residue;

  Table table;
  table.columns = {"t", "density", "volume"};
  if (want_residue)
    for (const auto& f : space.components()) table.columns.push_back("density:" + f.label());
  if (cfg.mode == Mode::both) {
    table.columns.push_back("fourier_density");
    table.columns.push_back("abs_diff");
  }
  table.columns.push_back("status");
  const std::size_t ncols = table.columns.size();

  std::vector<ScanRow> scanned;
  if (want_residue) scanned = scan(space, grid, cfg.eval);

  bool numeric_failure = false;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double t = grid[i];
    std::vector<Cell> row(ncols);
    row[0].number = t;
    std::string status = "ok";
    std::optional<double> residue_value;

    if (want_residue) {
      const ScanRow& s = scanned[i];
      if (!s.result) {
        status = s.wall ? "wall" : "error";
        err << (s.wall ? "warning: " : "error: ") << s.error << " at t=" << format_number(t)
            << "\n";
        if (!s.wall || single) numeric_failure = true;
        row.back().text = status;
        table.rows.push_back(std::move(row));
        continue;
      }
      residue_value = s.result->total;
      row[1].number = s.result->total;
      row[2].number = s.volume;
      std::size_t col = 3;
      for (const auto& [label, v] : s.result->per_component) row[col++].number = v;
    }
    if (want_fourier) {
      try {
        const Reconstruction rec = reconstruct_density(space, t, cfg.method);
        if (cfg.mode == Mode::fourier) {
          row[1].number = rec.value;
          row[2].number = volume_from_density(space, t, rec.value);
        } else {
          row[ncols - 3].number = rec.value;
          row[ncols - 2].number = std::abs(rec.value - *residue_value);
        }
      } catch (const NumericError& e) {
        err << "error: " << e.what() << " at t=" << format_number(t) << "\n";
        status = "error";
        numeric_failure = true;
      }
    }
    row.back().text = status;
    table.rows.push_back(std::move(row));
  }
  emit(table, cfg, "eval", space.name(), out);
  return numeric_failure ? kExitNumeric : kExitOk;
}

inline int cmd_central(const CliConfig& cfg, const std::string& at, std::ostream& out,
                       std::ostream& err) {
  CentralElement which;
  if (at == "e")
    which = CentralElement::identity;
  else if (at == "-e")
    which = CentralElement::minus_identity;
  else
    throw InputError("--at must be e or -e");
  const QHSpace space = cfg.source.load();
  if (!(cfg.eval.imag_tolerance > 0.0)) throw InputError("--imag-tol must be positive");

  err << "warning: central value assumes ±e is a regular value\n";
  const DensityResult r = central_density_detailed(space, which, cfg.eval);
  Table table;
  table.columns = {"at", "density", "volume"};
  for (const auto& f : space.components()) table.columns.push_back("density:" + f.label());
  std::vector<Cell> row;
  row.push_back({std::nullopt, at});
  row.push_back({r.total, {}});
  row.push_back({central_volume_from_density(space, r.total), {}});
  for (const auto& [label, v] : r.per_component) row.push_back({v, {}});
  table.rows.push_back(std::move(row));
  emit(table, cfg, "central", space.name(), out);
  return kExitOk;
}

struct LemmaConfig {
  std::vector<std::string> coeffs;
  std::string gamma;
  long terms = 100000;
  std::string r;
  double tolerance = 1e-6;
};

inline RationalPoleFunction parse_pole_function(const std::vector<std::string>& specs) {
  if (specs.empty()) throw InputError("at least one --coeff K:RE[:IM] is required");
  std::map<int, cplx> a;
  for (const auto& s : specs) {
    const auto parts = split(s, ':');
    if (parts.size() < 2 || parts.size() > 3)
      throw InputError("--coeff expects K:RE or K:RE:IM, got '" + s + "'");
    const long k = parse_long(parts[0], "--coeff order");
    if (k < 1 || k > 64) throw InputError("--coeff order must lie in 1..64");
    const double re = parse_real(parts[1], "--coeff real part");
    const double im = parts.size() == 3 ? parse_real(parts[2], "--coeff imaginary part") : 0.0;
    a[static_cast<int>(k)] += cplx(re, im);
  }
  return RationalPoleFunction(std::move(a));
}

inline int cmd_lemma(const LemmaConfig& lc, const CliConfig& cfg, std::ostream& out) {
  if (lc.gamma.empty()) throw InputError("--gamma is required");
  const double gamma = parse_real(lc.gamma, "--gamma");
  if (!(std::abs(gamma) < 2.0 * std::numbers::pi) || gamma == 0.0)
    throw InputError("gamma outside lemma range");
  const RationalPoleFunction f = parse_pole_function(lc.coeffs);
  if (lc.terms < 1) throw InputError("--terms must be >= 1");
  if (!(lc.tolerance > 0.0)) throw InputError("--tol must be positive");

  const cplx res = exp_sum_residue(f, gamma);
  cplx partial;
  if (lc.r.empty()) {
    const std::vector<double> radii{0.9996, 0.9998, 0.9999};
    partial = exp_sum_abel(f, gamma, lc.terms, radii).value;
  } else {
    partial = exp_sum_partial(f, gamma, lc.terms, parse_real(lc.r, "--r"));
  }
  const double diff = std::abs(res - partial);
  const double bound = lc.tolerance * (1.0 + std::abs(res));
  const bool pass = diff <= bound;

  Table table;
  table.columns = {"gamma", "residue_re", "residue_im", "partial_re", "partial_im",
                   "abs_diff", "bound", "status"};
  table.rows.push_back({{gamma, {}},
                        {res.real(), {}},
                        {res.imag(), {}},
                        {partial.real(), {}},
                        {partial.imag(), {}},
                        {diff, {}},
                        {bound, {}},
                        {std::nullopt, pass ? "PASS" : "FAIL"}});
  emit(table, cfg, "lemma", "", out);
  return pass ? kExitOk : kExitNumeric;
}

inline int cmd_dump(const CliConfig& cfg, std::ostream& out) {
  const std::string doc = save_space(cfg.source.load());
  if (cfg.out_path.empty()) {
    out << doc;
  } else {
    std::ofstream f(cfg.out_path, std::ios::binary);
    if (!f) throw InputError("cannot open output file '" + cfg.out_path + "'");
    f << doc;
  }
  return kExitOk;
}

/// Entry point shared by the executable and the tests. `args` excludes argv[0].
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Duistermaat-Heckman densities and reduced volumes of quasi-Hamiltonian "
               "SU(2)-spaces",
               "dhloc"};
  app.require_subcommand(1);

  CliConfig cfg;
  std::string mode = "residue", method = "abel", format = "csv", wall = "error";
  std::string terms, abel_r, richardson, imag_tol, at;
  LemmaConfig lc;
  std::string lemma_terms, lemma_tol;

  auto add_source = [&](CLI::App* sub) {
    sub->add_option("--builtin", cfg.source.builtin, "Built-in space: s4, double, product:N");
    sub->add_option("--space", cfg.source.file, "Space file (JSON)");
  };
  auto add_output = [&](CLI::App* sub) {
    sub->add_option("--out", cfg.out_path, "Output path (default: standard output)");
    sub->add_option("--format", format, "csv or json");
  };

  auto* eval = app.add_subcommand("eval", "Evaluate the density and reduced volume");
  add_source(eval);
  eval->add_option("--t", cfg.t_single, "Single point t in (0,1)");
  eval->add_option("--grid", cfg.grid, "Grid start:end:step");
  eval->add_option("--mode", mode, "residue, fourier or both");
  eval->add_option("--method", method, "Fourier summation: partial, abel or cesaro");
  eval->add_option("--terms", terms, "Fourier terms N");
  eval->add_option("--abel", abel_r, "Abel radius r in (0,1)");
  eval->add_option("--richardson", richardson, "Richardson extrapolation levels");
  eval->add_option("--imag-tol", imag_tol, "Relative tolerance on imaginary residuals");
  eval->add_option("--wall-policy", wall, "error, left or right");
  add_output(eval);

  auto* central = app.add_subcommand("central", "Evaluate at the central elements e or -e");
  add_source(central);
  central->add_option("--at", at, "e or -e")->required();
  central->add_option("--imag-tol", imag_tol, "Relative tolerance on imaginary residuals");
  add_output(central);

  auto* lemma = app.add_subcommand("lemma", "Check an exponential sum against its residue");
  lemma->add_option("--coeff", lc.coeffs, "Coefficient K:RE[:IM] of z^-K (repeatable)");
  lemma->add_option("--gamma", lc.gamma, "gamma in (-2pi,0) or (0,2pi)");
  lemma->add_option("--terms", lemma_terms, "Partial-sum cutoff M");
  lemma->add_option("--r", lc.r, "Single Abel damping radius (default: extrapolated)");
  lemma->add_option("--tol", lemma_tol, "Relative agreement tolerance");
  add_output(lemma);

  auto* dump = app.add_subcommand("dump", "Write a space in canonical file form");
  add_source(dump);
  dump->add_option("--out", cfg.out_path, "Output path (default: standard output)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (format == "csv")
      cfg.format = Format::csv;
    else if (format == "json")
      cfg.format = Format::json;
    else
      throw InputError("--format must be csv or json");

    if (!imag_tol.empty()) cfg.eval.imag_tolerance = parse_real(imag_tol, "--imag-tol");

    if (*eval) {
      if (mode == "residue") cfg.mode = Mode::residue;
      else if (mode == "fourier") cfg.mode = Mode::fourier;
      else if (mode == "both") cfg.mode = Mode::both;
      else throw InputError("--mode must be residue, fourier or both");

      if (method == "abel") cfg.method.kind = SummationKind::abel;
      else if (method == "partial") cfg.method.kind = SummationKind::partial;
      else if (method == "cesaro") cfg.method.kind = SummationKind::cesaro;
      else throw InputError("--method must be partial, abel or cesaro");
      if (!terms.empty()) cfg.method.terms = parse_long(terms, "--terms");
      if (!abel_r.empty()) cfg.method.abel_r = parse_real(abel_r, "--abel");
      if (!richardson.empty())
        cfg.method.richardson_levels = static_cast<int>(parse_long(richardson, "--richardson"));
      if (cfg.method.terms > 50000000) throw InputError("--terms is too large");

      if (wall == "error") cfg.eval.wall_policy = WallPolicy::error;
      else if (wall == "left") cfg.eval.wall_policy = WallPolicy::left_limit;
      else if (wall == "right") cfg.eval.wall_policy = WallPolicy::right_limit;
      else throw InputError("--wall-policy must be error, left or right");
      return cmd_eval(cfg, out, err);
    }
    if (*central) return cmd_central(cfg, at, out, err);
    if (*lemma) {
      if (!lemma_terms.empty()) lc.terms = parse_long(lemma_terms, "--terms");
      if (!lemma_tol.empty()) lc.tolerance = parse_real(lemma_tol, "--tol");
      return cmd_lemma(lc, cfg, out);
    }
    return cmd_dump(cfg, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const NumericError& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
}

}  // namespace dhloc::cli
