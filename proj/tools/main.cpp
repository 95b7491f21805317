// Batch front end: loads measure/zone/potential/weight specs, dispatches to
// the library, and emits JSON reports or CSV grids.  Exit codes: 0 ok,
// 2 bad spec, 3 degenerate pair, 4 tolerance ambiguity, 5 numeric failure.

#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <functional>
#include <iostream>
#include <mutex>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "indefspec/critical.hpp"
#include "indefspec/eigen.hpp"
#include "indefspec/error.hpp"
#include "indefspec/infzone.hpp"
#include "indefspec/io.hpp"
#include "indefspec/measure.hpp"
#include "indefspec/modelop.hpp"
#include "indefspec/sturm.hpp"
#include "indefspec/types.hpp"
#include "indefspec/weyl.hpp"

namespace {

using indefspec::Complex;
using indefspec::Errc;
using indefspec::Interval;
using indefspec::Side;
using Json = nlohmann::ordered_json;

struct Global {
  double tol = 0;  // 0 keeps the library defaults
  int kmax = 32;
  int threads = 1;
  std::string out = "-";
  std::string format = "json";
};

double parse_real(const std::string& s) {
  try {
    size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos == s.size()) return v;
  } catch (const std::exception&) {
  }
  indefspec::fail(Errc::invalid_spec, "bad number '" + s + "'");
}

// Accepts 0, -1.5, i, -i, 2i, 1+2i, 0.5-0.25i, 1e-3i.
Complex parse_complex(const std::string& raw) {
  std::string s;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) indefspec::fail(Errc::invalid_spec, "empty spectral point");
  if (s.back() != 'i' && s.back() != 'I') return {parse_real(s), 0.0};
  s.pop_back();
  size_t split = std::string::npos;
  for (size_t k = s.size(); k-- > 1;) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  std::string re = split == std::string::npos ? "" : s.substr(0, split);
  std::string im = split == std::string::npos ? s : s.substr(split);
  if (im.empty() || im == "+") im = "1";
  else if (im == "-") im = "-1";
  return {re.empty() ? 0.0 : parse_real(re), parse_real(im)};
}

std::vector<Complex> parse_complex_list(const std::string& s) {
  std::vector<Complex> out;
  size_t start = 0;
  for (;;) {
    size_t comma = s.find(',', start);
    std::string tok = s.substr(
        start, comma == std::string::npos ? std::string::npos : comma - start);
    out.push_back(parse_complex(tok));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

Side parse_side(const std::string& s) {
  if (s == "plus" || s == "+") return Side::plus;
  if (s == "minus" || s == "-") return Side::minus;
  indefspec::fail(Errc::invalid_spec, "side must be plus or minus");
}

Json num_json(double v) {
  if (std::isnan(v)) return Json("nan");
  if (!std::isfinite(v)) return Json(v > 0 ? "inf" : "-inf");
  return Json(v);
}

Json complex_json(Complex z) {
  Json j = Json::object();
  j["re"] = num_json(z.real());
  j["im"] = num_json(z.imag());
  return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

// Index-addressed parallel loop; output slots keep grid emission
// deterministic regardless of the thread count.
template <class F>
void parallel_for(int n, int threads, F&& f) {
  threads = std::max(1, std::min(threads, n));
  if (threads <= 1) {
    for (int k = 0; k < n; ++k) f(k);
    return;
  }
  std::atomic<int> next{0};
  std::mutex mu;
  std::exception_ptr first;
  std::vector<std::thread> pool;
  pool.reserve(size_t(threads));
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (;;) {
        int k = next.fetch_add(1);
        if (k >= n) return;
        try {
          f(k);
        } catch (...) {
          std::lock_guard<std::mutex> lock(mu);
          if (!first) first = std::current_exception();
          return;
        }
      }
    });
  for (auto& th : pool) th.join();
  if (first) std::rethrow_exception(first);
}

int emit_degenerate(const Global& g) {
  Json j = Json::object();
  j["degenerate"] = true;
  j["message"] = "sigma(A)=C";
  indefspec::io::write_output(g.out, dump(j));
  std::cerr << "sigma(A)=C\n";
  return 3;
}

// ---------------------------------------------------------------------------
// spectrum helpers

// Carves the requested region into pieces clear of the essential spectrum:
// real gap segments plus the two open half-planes.
std::vector<indefspec::DiscretePoint> region_split_discrete(
    const indefspec::ModelOperator& op, indefspec::SpectrumRegion region,
    int k_max) {
  const indefspec::IntervalUnion ess =
      indefspec::essential_spectrum(op.plus.measure, op.minus.measure);
  const double sc =
      std::max({1.0, std::abs(region.re_lo), std::abs(region.re_hi)});
  const double eps = 1e-6 * sc;

  std::vector<indefspec::DiscretePoint> all;
  auto run = [&](indefspec::SpectrumRegion r) {
    auto part = indefspec::discrete_spectrum(op, r, k_max);
    all.insert(all.end(), part.begin(), part.end());
  };

  if (region.im_lo <= 0 && region.im_hi >= 0) {
    for (Interval gap :
         ess.gaps_within({region.re_lo, region.re_hi})) {
      double lo = gap.lo;
      double hi = gap.hi;
      if (!ess.empty() && ess.distance(lo) == 0) lo += eps;
      if (!ess.empty() && ess.distance(hi) == 0) hi -= eps;
      if (hi - lo > eps) run({lo, hi, 0, 0});
    }
  }
  if (region.im_hi > eps) {
    double lo = std::max(region.im_lo, eps);
    if (region.im_hi > lo)
      run({region.re_lo, region.re_hi, lo, region.im_hi});
  }
  if (region.im_lo < -eps) {
    double hi = std::min(region.im_hi, -eps);
    if (hi > region.im_lo)
      run({region.re_lo, region.re_hi, region.im_lo, hi});
  }

  std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
    if (a.lambda.real() != b.lambda.real())
      return a.lambda.real() < b.lambda.real();
    return a.lambda.imag() < b.lambda.imag();
  });
  return all;
}

std::string phi_grid_csv(const std::function<Complex(Complex)>& phi,
                         indefspec::SpectrumRegion region, int grid,
                         int threads) {
  std::vector<Complex> pts;
  if (region.real_interval()) {
    pts.reserve(size_t(grid));
    for (int k = 0; k < grid; ++k) {
      double s = grid == 1 ? 0.5 : double(k) / (grid - 1);
      pts.push_back({region.re_lo + (region.re_hi - region.re_lo) * s, 0.0});
    }
  } else {
    pts.reserve(size_t(grid) * size_t(grid));
    for (int r = 0; r < grid; ++r)
      for (int c = 0; c < grid; ++c) {
        double sr = grid == 1 ? 0.5 : double(r) / (grid - 1);
        double sc = grid == 1 ? 0.5 : double(c) / (grid - 1);
        pts.push_back({region.re_lo + (region.re_hi - region.re_lo) * sc,
                       region.im_lo + (region.im_hi - region.im_lo) * sr});
      }
  }
  std::vector<std::vector<double>> rows(pts.size());
  parallel_for(int(pts.size()), threads, [&](int k) {
    Complex z = pts[size_t(k)];
    Complex v{std::nan(""), std::nan("")};
    try {
      v = phi(z);
    } catch (const indefspec::Error&) {
    }
    rows[size_t(k)] = {z.real(), z.imag(), v.real(), v.imag()};
  });
  return indefspec::io::csv_table({"re_lambda", "im_lambda", "re_phi", "im_phi"},
                                  rows);
}

indefspec::SpectrumRegion region_from_values(const std::vector<double>& v) {
  indefspec::SpectrumRegion region;
  if (v.size() == 2) {
    region = {v[0], v[1], 0, 0};
  } else if (v.size() == 4) {
    region = {v[0], v[1], v[2], v[3]};
  } else {
    indefspec::fail(Errc::invalid_spec,
                    "--region expects RE_LO RE_HI [IM_LO IM_HI]");
  }
  if (!(region.re_lo < region.re_hi) || region.im_lo > region.im_hi)
    indefspec::fail(Errc::invalid_spec, "empty search region");
  return region;
}

// ---------------------------------------------------------------------------
// commands

int cmd_validate(const Global& g, const std::string& measure,
                 const std::string& zone, const std::string& weight,
                 const std::string& potential) {
  int given = int(!measure.empty()) + int(!zone.empty()) +
              int(!weight.empty()) + int(!potential.empty());
  if (given != 1)
    indefspec::fail(
        Errc::invalid_spec,
        "validate needs exactly one of --measure/--zone/--weight/--potential");
  std::vector<std::string> violations;
  if (!measure.empty())
    violations = indefspec::validate(indefspec::io::load_measure(measure));
  else if (!zone.empty())
    violations = indefspec::validate(indefspec::io::load_zone(zone));
  else if (!weight.empty())
    violations = indefspec::validate(indefspec::io::load_weight(weight));
  else
    (void)indefspec::io::load_potential(potential);  // shape-checked on load
  indefspec::io::write_output(g.out, indefspec::io::validation_json(violations));
  return violations.empty() ? 0 : 2;
}

int cmd_classify(const Global& g, const std::string& plus,
                 const std::string& minus, const std::string& lambda) {
  indefspec::ModelOperator op{indefspec::io::load_weyl(plus),
                              indefspec::io::load_weyl(minus)};
  Complex z = parse_complex(lambda);
  if (indefspec::degenerate_check(op)) return emit_degenerate(g);
  indefspec::EigenReport rep = indefspec::classify_eigenvalue(op, z, g.kmax);
  indefspec::io::write_output(g.out, indefspec::io::to_json(rep));
  return rep.ambiguous ? 4 : 0;
}

int cmd_spectrum(const Global& g, const std::string& plus,
                 const std::string& minus, const std::string& zone,
                 const std::vector<double>& region_v, int grid,
                 const std::string& grid_out) {
  indefspec::SpectrumRegion region = region_from_values(region_v);
  const double scale =
      std::max({1.0, std::abs(region.re_lo), std::abs(region.re_hi),
                std::abs(region.im_lo), std::abs(region.im_hi)});

  indefspec::SpectrumReport rep;
  std::function<Complex(Complex)> phi;

  if (!zone.empty()) {
    indefspec::ZoneSpec z = indefspec::io::load_zone(zone);
    rep = indefspec::indefinite_spectrum(z, region, g.kmax);
    auto set = indefspec::make_zone_function_set(
        z, indefspec::resolve_level(z, scale));
    phi = [set](Complex lam) {
      return indefspec::m_from_set(set, lam, Side::plus) +
             indefspec::m_from_set(set, -lam, Side::minus);
    };
  } else {
    if (plus.empty() || minus.empty())
      indefspec::fail(Errc::invalid_spec,
                      "spectrum needs --plus and --minus, or --zone");
    indefspec::ModelOperator op{indefspec::io::load_weyl(plus),
                                indefspec::io::load_weyl(minus)};
    if (indefspec::degenerate_check(op)) return emit_degenerate(g);
    rep.degenerate = false;
    rep.essential =
        indefspec::essential_spectrum(op.plus.measure, op.minus.measure);
    rep.discrete = region_split_discrete(op, region, g.kmax);
    phi = [op](Complex lam) { return indefspec::phi_value(op, lam); };
  }

  if (g.format == "csv") {
    indefspec::io::write_output(g.out,
                                phi_grid_csv(phi, region, grid, g.threads));
  } else {
    indefspec::io::write_output(g.out, indefspec::io::to_json(rep));
    if (!grid_out.empty())
      indefspec::io::write_output(grid_out,
                                  phi_grid_csv(phi, region, grid, g.threads));
  }
  return 0;
}

int cmd_infzone(const Global& g, const std::string& spec, bool identity,
                const std::string& lambda, const std::string& side_str,
                int level, const std::vector<double>& window_v, bool bands,
                bool discrete, const std::vector<double>& density_ts,
                int grid) {
  indefspec::ZoneSpec z = indefspec::io::load_zone(spec);
  auto violations = indefspec::validate(z);
  if (!violations.empty()) {
    indefspec::io::write_output(g.out,
                                indefspec::io::validation_json(violations));
    return 2;
  }
  Side side = parse_side(side_str);
  Interval window{-64.0, 64.0};
  if (window_v.size() == 2) window = {window_v[0], window_v[1]};
  const double scale = std::max({1.0, std::abs(window.lo), std::abs(window.hi)});
  const int n = level > 0 ? level : indefspec::resolve_level(z, scale);

  if (g.format == "csv") {
    auto set = indefspec::make_zone_function_set(z, n);
    std::vector<std::vector<double>> rows;
    for (int k = 0; k < grid; ++k) {
      double s = grid == 1 ? 0.5 : double(k) / (grid - 1);
      double t = window.lo + (window.hi - window.lo) * s;
      try {
        rows.push_back({t, indefspec::band_density_set(set, t, side)});
      } catch (const indefspec::Error&) {
        // off the bands: no row
      }
    }
    indefspec::io::write_output(g.out,
                                indefspec::io::csv_table({"t", "density"}, rows));
    return 0;
  }

  Json j = Json::object();
  j["mu0r"] = num_json(z.mu0r);
  j["level"] = n;

  if (identity) {
    std::vector<Complex> samples;
    for (int k = 0; k < 50; ++k) {
      double r = 0.25 * std::pow(1.18, k);
      double th = 2.0 * indefspec::kPi * k / 50.0 + 0.37;
      samples.push_back({r * std::cos(th), r * std::sin(th)});
    }
    Json levels = Json::array();
    double worst = 0;
    for (int lev : {1, 8, 64}) {
      double res = indefspec::identity_residual(z, samples, lev);
      worst = std::max(worst, res);
      Json e = Json::object();
      e["level"] = lev;
      e["residual"] = num_json(res);
      levels.push_back(std::move(e));
    }
    j["identity_residual"] = num_json(worst);
    j["identity_levels"] = std::move(levels);
  }

  if (!lambda.empty()) {
    Complex lam = parse_complex(lambda);
    indefspec::ZoneValues v = indefspec::build_zone_functions(z, lam, n);
    Json zv = Json::object();
    zv["g"] = complex_json(v.g);
    zv["f"] = complex_json(v.f);
    zv["k"] = complex_json(v.k);
    zv["h"] = complex_json(v.h);
    zv["truncation_bound"] = num_json(v.truncation_bound);
    j["zone_values"] = std::move(zv);
    j["m"] = complex_json(indefspec::m_coefficient(z, lam, side));
    j["M_indefinite"] = complex_json(indefspec::indefinite_weyl(z, lam, side));
  }

  if (bands) {
    Json b = Json::array();
    for (const Interval& band : indefspec::spectral_bands(z, n)) {
      Json e = Json::object();
      e["lo"] = num_json(band.lo);
      e["hi"] = num_json(band.hi);
      b.push_back(std::move(e));
    }
    j["bands"] = std::move(b);
  }

  if (discrete) {
    Json d = Json::array();
    for (double t : indefspec::a0_discrete(z, side, window))
      d.push_back(num_json(t));
    j["discrete"] = std::move(d);
  }

  if (!density_ts.empty()) {
    Json d = Json::array();
    for (double t : density_ts) {
      Json e = Json::object();
      e["t"] = num_json(t);
      try {
        e["density"] = num_json(indefspec::band_density(z, t, side));
      } catch (const indefspec::Error&) {
        e["density"] = nullptr;
      }
      d.push_back(std::move(e));
    }
    j["density"] = std::move(d);
  }

  indefspec::io::write_output(g.out, dump(j));
  return 0;
}

int cmd_mfun(const Global& g, const std::string& q_path,
             const std::string& lambda, const std::string& side_str,
             double x_max, double target) {
  indefspec::PotentialSpec q = indefspec::io::load_potential(q_path);
  Side side = parse_side(side_str);
  std::vector<Complex> pts = parse_complex_list(lambda);
  std::vector<indefspec::WeylDiskResult> res(pts.size());
  parallel_for(int(pts.size()), g.threads, [&](int k) {
    res[size_t(k)] =
        indefspec::m_numeric(q, side, pts[size_t(k)], x_max, target);
  });

  if (g.format == "csv") {
    std::vector<std::vector<double>> rows;
    rows.reserve(pts.size());
    for (size_t k = 0; k < pts.size(); ++k)
      rows.push_back({pts[k].real(), pts[k].imag(), res[k].m.real(),
                      res[k].m.imag(), res[k].error});
    indefspec::io::write_output(
        g.out, indefspec::io::csv_table(
                   {"re_lambda", "im_lambda", "re_m", "im_m", "disk_radius"},
                   rows));
    return 0;
  }

  Json j = Json::object();
  j["side"] = side == Side::plus ? "plus" : "minus";
  Json arr = Json::array();
  for (size_t k = 0; k < pts.size(); ++k) {
    Json e = Json::object();
    e["lambda"] = complex_json(pts[k]);
    e["m"] = complex_json(res[k].m);
    e["error"] = num_json(res[k].error);
    e["x_used"] = num_json(res[k].x_used);
    arr.push_back(std::move(e));
  }
  j["results"] = std::move(arr);
  indefspec::io::write_output(g.out, dump(j));
  return 0;
}

int cmd_critical(const Global& g, const std::string& w_path) {
  indefspec::WeightFunction w = indefspec::io::load_weight(w_path);
  indefspec::CriticalVerdict v = indefspec::critical_verdict(w);
  indefspec::io::write_output(g.out, indefspec::io::to_json(v));
  return 0;
}

int guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const indefspec::Error& e) {
    std::cerr << e.what() << "\n";
    switch (e.code()) {
      case Errc::invalid_spec:
      case Errc::region_touches_essential:
        return 2;
      case Errc::degenerate:
        std::cerr << "sigma(A)=C\n";
        return 3;
      case Errc::branch_ambiguity:
        return 4;
      default:
        return 5;
    }
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 5;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral analysis of indefinite Sturm-Liouville operators"};
  app.require_subcommand(1);
  app.fallthrough();

  Global g;
  app.add_option("--tol", g.tol,
                 "Zero-test tolerance; scales the default suite")
      ->check(CLI::PositiveNumber);
  app.add_option("--kmax", g.kmax, "Algebraic multiplicity search cap")
      ->check(CLI::Range(1, 4096));
  app.add_option("--threads", g.threads, "Worker threads for grid sweeps")
      ->check(CLI::Range(1, 256));
  app.add_option("--out", g.out, "Output path, '-' for stdout");
  app.add_option("--format", g.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}));

  auto* classify =
      app.add_subcommand("classify", "Classify one spectral point");
  std::string cl_plus, cl_minus, cl_lambda;
  classify->add_option("--plus", cl_plus, "Spec for the + half")->required();
  classify->add_option("--minus", cl_minus, "Spec for the - half")->required();
  classify->add_option("--lambda", cl_lambda, "Point, e.g. 0, 1.5, 1+2i")
      ->required();

  auto* spectrum =
      app.add_subcommand("spectrum", "Essential and discrete spectrum");
  std::string sp_plus, sp_minus, sp_zone, sp_grid_out;
  std::vector<double> sp_region;
  int sp_grid = 32;
  spectrum->add_option("--plus", sp_plus, "Spec for the + half");
  spectrum->add_option("--minus", sp_minus, "Spec for the - half");
  spectrum->add_option("--zone", sp_zone, "Band-edge spec (replaces --plus/--minus)");
  spectrum->add_option("--region", sp_region, "RE_LO RE_HI [IM_LO IM_HI]")
      ->expected(2, 4)
      ->required();
  spectrum->add_option("--grid", sp_grid, "Samples per axis for CSV grids")
      ->check(CLI::Range(1, 4096));
  spectrum->add_option("--grid-out", sp_grid_out,
                       "Also write the sample grid CSV here");

  auto* infzone = app.add_subcommand("infzone", "Band-edge Weyl data");
  std::string iz_spec, iz_lambda, iz_side = "plus";
  bool iz_identity = false, iz_bands = false, iz_discrete = false;
  int iz_level = 0, iz_grid = 256;
  std::vector<double> iz_window, iz_density;
  infzone->add_option("--spec", iz_spec, "Band-edge spec")->required();
  infzone->add_flag("--identity-check", iz_identity,
                    "Report the algebraic identity residual");
  infzone->add_option("--lambda", iz_lambda, "Evaluate the functions here");
  infzone->add_option("--side", iz_side, "plus or minus")
      ->check(CLI::IsMember({"plus", "minus", "+", "-"}));
  infzone->add_option("--level", iz_level, "Truncation level (0 = adaptive)")
      ->check(CLI::Range(0, 65536));
  infzone->add_option("--window", iz_window, "LO HI evaluation window")
      ->expected(2);
  infzone->add_flag("--bands", iz_bands, "Report the spectral bands");
  infzone->add_flag("--discrete", iz_discrete,
                    "Report gap eigenvalues of the half-line problem");
  infzone->add_option("--density", iz_density,
                      "Band density at these points");
  infzone->add_option("--grid", iz_grid, "Samples for CSV density grids")
      ->check(CLI::Range(1, 65536));

  auto* mfun = app.add_subcommand("mfun", "Half-line m-coefficient");
  std::string mf_q, mf_lambda, mf_side = "plus";
  double mf_xmax = 64.0, mf_target = 1e-9;
  mfun->add_option("--q", mf_q, "Potential spec")->required();
  mfun->add_option("--lambda", mf_lambda, "Point or comma-separated list")
      ->required();
  mfun->add_option("--side", mf_side, "plus or minus")
      ->check(CLI::IsMember({"plus", "minus", "+", "-"}));
  mfun->add_option("--xmax", mf_xmax, "Largest integration radius")
      ->check(CLI::PositiveNumber);
  mfun->add_option("--target", mf_target, "Enclosure radius target")
      ->check(CLI::PositiveNumber);

  auto* critical = app.add_subcommand("critical", "Turning-point criticality");
  std::string cr_weight;
  critical->add_option("--weight", cr_weight, "Weight spec")->required();

  auto* validate = app.add_subcommand("validate", "Check a spec file");
  std::string va_measure, va_zone, va_weight, va_potential;
  validate->add_option("--measure", va_measure, "Measure spec");
  validate->add_option("--zone", va_zone, "Band-edge spec");
  validate->add_option("--weight", va_weight, "Weight spec");
  validate->add_option("--potential", va_potential, "Potential spec");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  if (const char* prec = std::getenv("INDEFSPEC_PRECISION");
      prec && *prec) {
    std::string p = prec;
    if (p == "extended") {
      indefspec::set_precision_mode(indefspec::PrecisionMode::extended);
    } else if (p != "standard") {
      std::cerr << "INDEFSPEC_PRECISION must be 'standard' or 'extended'\n";
      return 2;
    }
  }
  if (g.tol > 0) {
    auto& t = indefspec::tolerances();
    t.zero_abs = g.tol;
    t.equality_rel = g.tol;
    t.boundary_residual = g.tol;
    t.quadrature = std::min(t.quadrature, 0.1 * g.tol);
  }

  return guarded([&]() -> int {
    if (classify->parsed()) return cmd_classify(g, cl_plus, cl_minus, cl_lambda);
    if (spectrum->parsed())
      return cmd_spectrum(g, sp_plus, sp_minus, sp_zone, sp_region, sp_grid,
                          sp_grid_out);
    if (infzone->parsed())
      return cmd_infzone(g, iz_spec, iz_identity, iz_lambda, iz_side, iz_level,
                         iz_window, iz_bands, iz_discrete, iz_density, iz_grid);
    if (mfun->parsed())
      return cmd_mfun(g, mf_q, mf_lambda, mf_side, mf_xmax, mf_target);
    if (critical->parsed()) return cmd_critical(g, cr_weight);
    if (validate->parsed())
      return cmd_validate(g, va_measure, va_zone, va_weight, va_potential);
    return 0;
  });
}
