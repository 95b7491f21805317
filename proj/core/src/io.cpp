#include "indefspec/io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <utility>

#include "json.hpp"

#include "indefspec/error.hpp"

namespace indefspec::io {
namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void shape_error(const std::string& what) {
  fail(Errc::invalid_spec, what);
}

// ---------------------------------------------------------------------------
// TOML subset: tables, arrays of tables, dotted keys, inline tables, arrays,
// basic and literal strings, numbers (with inf/nan), booleans.  No datetimes,
// no multiline strings.  Output shape matches the JSON schema exactly.

class TomlParser {
 public:
  explicit TomlParser(const std::string& text) : s_(text) {}

  Json parse() {
    Json* table = &root_;
    for (;;) {
      skip_ws_comments();
      if (done()) break;
      if (peek() == '[') {
        ++i_;
        bool array_table = peek() == '[';
        if (array_table) ++i_;
        auto path = key_path();
        if (peek() != ']') die("expected ']'");
        ++i_;
        if (array_table) {
          if (peek() != ']') die("expected ']]'");
          ++i_;
        }
        table = navigate(path, array_table);
        end_of_line();
        continue;
      }
      auto path = key_path();
      if (peek() != '=') die("expected '='");
      ++i_;
      set_path(*table, path, value());
      end_of_line();
    }
    return std::move(root_);
  }

 private:
  const std::string& s_;
  size_t i_ = 0;
  Json root_ = Json::object();

  bool done() const { return i_ >= s_.size(); }
  char peek() const { return done() ? '\0' : s_[i_]; }

  [[noreturn]] void die(const std::string& msg) {
    size_t line = 1;
    for (size_t k = 0; k < i_ && k < s_.size(); ++k)
      if (s_[k] == '\n') ++line;
    shape_error("toml line " + std::to_string(line) + ": " + msg);
  }

  void skip_inline_ws() {
    while (!done() && (s_[i_] == ' ' || s_[i_] == '\t')) ++i_;
  }

  void skip_ws_comments() {
    for (;;) {
      skip_inline_ws();
      if (peek() == '#') {
        while (!done() && s_[i_] != '\n') ++i_;
        continue;
      }
      if (peek() == '\n' || peek() == '\r') {
        ++i_;
        continue;
      }
      break;
    }
  }

  void end_of_line() {
    skip_inline_ws();
    if (peek() == '#')
      while (!done() && s_[i_] != '\n') ++i_;
    if (done()) return;
    if (s_[i_] == '\r') ++i_;
    if (done()) return;
    if (s_[i_] != '\n') die("unexpected trailing characters");
    ++i_;
  }

  std::string key_part() {
    skip_inline_ws();
    if (peek() == '"' || peek() == '\'') return string_value();
    size_t b = i_;
    while (!done() && (std::isalnum(static_cast<unsigned char>(s_[i_])) ||
                       s_[i_] == '_' || s_[i_] == '-'))
      ++i_;
    if (i_ == b) die("expected a key");
    return s_.substr(b, i_ - b);
  }

  std::vector<std::string> key_path() {
    std::vector<std::string> path{key_part()};
    skip_inline_ws();
    while (peek() == '.') {
      ++i_;
      path.push_back(key_part());
      skip_inline_ws();
    }
    return path;
  }

  std::string string_value() {
    char quote = s_[i_];
    ++i_;
    std::string out;
    if (quote == '\'') {
      while (!done() && s_[i_] != '\'' && s_[i_] != '\n') {
        out += s_[i_];
        ++i_;
      }
      if (peek() != '\'') die("unterminated literal string");
      ++i_;
      return out;
    }
    while (!done() && s_[i_] != '"') {
      char c = s_[i_];
      if (c == '\n') die("unterminated string");
      if (c != '\\') {
        out += c;
        ++i_;
        continue;
      }
      ++i_;
      if (done()) die("dangling escape");
      switch (s_[i_]) {
        case 'n': out += '\n'; break;
        case 't': out += '\t'; break;
        case 'r': out += '\r'; break;
        case 'b': out += '\b'; break;
        case 'f': out += '\f'; break;
        case '"': out += '"'; break;
        case '\\': out += '\\'; break;
        case 'u': {
          if (i_ + 4 >= s_.size()) die("truncated \\u escape");
          unsigned v = 0;
          for (int k = 1; k <= 4; ++k) {
            char h = s_[i_ + size_t(k)];
            v <<= 4;
            if (h >= '0' && h <= '9') v |= unsigned(h - '0');
            else if (h >= 'a' && h <= 'f') v |= unsigned(h - 'a' + 10);
            else if (h >= 'A' && h <= 'F') v |= unsigned(h - 'A' + 10);
            else die("bad \\u escape");
          }
          i_ += 4;
          if (v < 0x80) {
            out += char(v);
          } else if (v < 0x800) {
            out += char(0xC0 | (v >> 6));
            out += char(0x80 | (v & 0x3F));
          } else {
            out += char(0xE0 | (v >> 12));
            out += char(0x80 | ((v >> 6) & 0x3F));
            out += char(0x80 | (v & 0x3F));
          }
          break;
        }
        default: die("unsupported escape");
      }
      ++i_;
    }
    if (done()) die("unterminated string");
    ++i_;
    return out;
  }

  Json value() {
    skip_inline_ws();
    char c = peek();
    if (c == '"' || c == '\'') return Json(string_value());
    if (c == '[') return array_value();
    if (c == '{') return inline_table();
    return scalar_token();
  }

  Json array_value() {
    ++i_;
    Json arr = Json::array();
    skip_ws_comments();
    if (peek() == ']') {
      ++i_;
      return arr;
    }
    for (;;) {
      skip_ws_comments();
      arr.push_back(value());
      skip_ws_comments();
      if (peek() == ',') {
        ++i_;
        skip_ws_comments();
        if (peek() == ']') {
          ++i_;
          break;
        }
        continue;
      }
      if (peek() == ']') {
        ++i_;
        break;
      }
      die("expected ',' or ']' in array");
    }
    return arr;
  }

  Json inline_table() {
    ++i_;
    Json obj = Json::object();
    skip_inline_ws();
    if (peek() == '}') {
      ++i_;
      return obj;
    }
    for (;;) {
      auto path = key_path();
      if (peek() != '=') die("expected '=' in inline table");
      ++i_;
      set_path(obj, path, value());
      skip_inline_ws();
      if (peek() == ',') {
        ++i_;
        continue;
      }
      if (peek() == '}') {
        ++i_;
        break;
      }
      die("expected ',' or '}' in inline table");
    }
    return obj;
  }

  Json scalar_token() {
    size_t b = i_;
    while (!done() && s_[i_] != ' ' && s_[i_] != '\t' && s_[i_] != '\n' &&
           s_[i_] != '\r' && s_[i_] != ',' && s_[i_] != ']' && s_[i_] != '}' &&
           s_[i_] != '#')
      ++i_;
    std::string tok = s_.substr(b, i_ - b);
    if (tok.empty()) die("expected a value");
    if (tok == "true") return Json(true);
    if (tok == "false") return Json(false);
    std::string t;
    for (char ch : tok)
      if (ch != '_') t += ch;
    if (t == "inf" || t == "+inf")
      return Json(std::numeric_limits<double>::infinity());
    if (t == "-inf") return Json(-std::numeric_limits<double>::infinity());
    if (t == "nan" || t == "+nan" || t == "-nan")
      return Json(std::numeric_limits<double>::quiet_NaN());
    bool integral = true;
    size_t k0 = (t[0] == '+' || t[0] == '-') ? 1 : 0;
    if (k0 == t.size()) integral = false;
    for (size_t k = k0; k < t.size() && integral; ++k)
      integral = std::isdigit(static_cast<unsigned char>(t[k])) != 0;
    try {
      if (integral) return Json(static_cast<long long>(std::stoll(t)));
      size_t pos = 0;
      double d = std::stod(t, &pos);
      if (pos != t.size()) die("bad number '" + tok + "'");
      return Json(d);
    } catch (const Error&) {
      throw;
    } catch (const std::exception&) {
      die("bad value '" + tok + "'");
    }
  }

  static void set_path(Json& obj, const std::vector<std::string>& path,
                       Json v) {
    Json* cur = &obj;
    for (size_t k = 0; k + 1 < path.size(); ++k) {
      Json& nxt = (*cur)[path[k]];
      if (nxt.is_null()) nxt = Json::object();
      if (!nxt.is_object())
        shape_error("toml: key '" + path[k] + "' is not a table");
      cur = &nxt;
    }
    if (cur->contains(path.back()))
      shape_error("toml: duplicate key '" + path.back() + "'");
    (*cur)[path.back()] = std::move(v);
  }

  Json* navigate(const std::vector<std::string>& path, bool array_table) {
    Json* cur = &root_;
    for (size_t k = 0; k < path.size(); ++k) {
      bool last = k + 1 == path.size();
      Json& nxt = (*cur)[path[k]];
      if (last && array_table) {
        if (nxt.is_null()) nxt = Json::array();
        if (!nxt.is_array())
          die("'" + path[k] + "' is not an array of tables");
        nxt.push_back(Json::object());
        return &nxt.back();
      }
      if (nxt.is_null()) nxt = Json::object();
      if (nxt.is_array()) {
        if (nxt.empty() || !nxt.back().is_object())
          die("'" + path[k] + "' is not a table");
        cur = &nxt.back();
      } else if (nxt.is_object()) {
        cur = &nxt;
      } else {
        die("'" + path[k] + "' is not a table");
      }
    }
    return cur;
  }
};

// ---------------------------------------------------------------------------
// shape helpers

Json parse_any(const std::string& text, bool toml) {
  if (toml) return TomlParser(text).parse();
  try {
    return Json::parse(text);
  } catch (const std::exception& e) {
    shape_error(std::string("json: ") + e.what());
  }
}

const Json* find(const Json& o, const char* key) {
  if (!o.is_object()) return nullptr;
  auto it = o.find(key);
  return it == o.end() ? nullptr : &*it;
}

double to_double(const Json& v, const std::string& what) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    std::string s = v.get<std::string>();
    if (s == "inf" || s == "+inf") return kInf;
    if (s == "-inf") return -kInf;
    shape_error(what + ": expected a number, got '" + s + "'");
  }
  shape_error(what + ": expected a number");
}

double require_num(const Json& o, const char* key, const std::string& ctx) {
  const Json* v = find(o, key);
  if (!v) shape_error(ctx + ": missing '" + key + "'");
  return to_double(*v, ctx + "." + key);
}

double opt_num(const Json& o, const char* key, double dflt,
               const std::string& ctx) {
  const Json* v = find(o, key);
  return v ? to_double(*v, ctx + "." + key) : dflt;
}

std::string require_str(const Json& o, const char* key,
                        const std::string& ctx) {
  const Json* v = find(o, key);
  if (!v) shape_error(ctx + ": missing '" + key + "'");
  if (!v->is_string()) shape_error(ctx + "." + key + ": expected a string");
  return v->get<std::string>();
}

long long to_index(const Json& v, const std::string& what) {
  double d = to_double(v, what);
  if (!std::isfinite(d)) return d > 0 ? kIdxMax : kIdxMin;
  return std::llround(d);
}

// ---------------------------------------------------------------------------
// domain objects from parsed trees

AtomFamily family_from_json(const Json& f, const std::string& ctx) {
  AtomFamily fam;
  fam.positions = Expr::parse(require_str(f, "positions", ctx), "k");
  fam.weights = Expr::parse(require_str(f, "weights", ctx), "k");
  fam.weight_exponent = require_num(f, "tail_exponent", ctx);
  fam.position_growth = opt_num(f, "position_growth", 1.0, ctx);
  if (const Json* acc = find(f, "accumulation")) {
    fam.accumulation = to_double(*acc, ctx + ".accumulation");
    fam.accumulation_exponent = opt_num(f, "accumulation_exponent", 1.0, ctx);
  }
  if (const Json* r = find(f, "range")) {
    if (r->is_array()) {
      if (r->size() != 2) shape_error(ctx + ".range: expected [lo, hi]");
      fam.range.lo = to_index((*r)[0], ctx + ".range[0]");
      fam.range.hi = to_index((*r)[1], ctx + ".range[1]");
    } else if (r->is_object()) {
      if (const Json* lo = find(*r, "lo"))
        fam.range.lo = to_index(*lo, ctx + ".range.lo");
      if (const Json* hi = find(*r, "hi"))
        fam.range.hi = to_index(*hi, ctx + ".range.hi");
      if (const Json* ex = find(*r, "exclude")) {
        if (!ex->is_array()) shape_error(ctx + ".range.exclude: expected an array");
        for (const Json& k : *ex)
          fam.range.exclude.push_back(to_index(k, ctx + ".range.exclude[]"));
      }
    } else {
      shape_error(ctx + ".range: expected an array or an object");
    }
  }
  return fam;
}

SpectralMeasure measure_from_json(const Json& j) {
  if (!j.is_object()) shape_error("measure: expected an object");
  SpectralMeasure m;
  if (const Json* v = find(j, "total_mass_infinite")) {
    if (!v->is_boolean())
      shape_error("measure.total_mass_infinite: expected a boolean");
    m.total_mass_infinite = v->get<bool>();
  }
  if (const Json* atoms = find(j, "atoms")) {
    if (!atoms->is_array()) shape_error("measure.atoms: expected an array");
    for (const Json& a : *atoms) {
      Atom at;
      at.t = require_num(a, "t", "atom");
      at.w = require_num(a, "w", "atom");
      m.atoms.push_back(at);
    }
  }
  if (const Json* f = find(j, "atom_family"))
    m.families.push_back(family_from_json(*f, "atom_family"));
  if (const Json* fs = find(j, "atom_families")) {
    if (!fs->is_array())
      shape_error("measure.atom_families: expected an array");
    for (const Json& f : *fs)
      m.families.push_back(family_from_json(f, "atom_families[]"));
  }
  if (const Json* ds = find(j, "densities")) {
    if (!ds->is_array()) shape_error("measure.densities: expected an array");
    for (const Json& d : *ds) {
      DensityPiece piece;
      const Json* iv = find(d, "interval");
      if (!iv || !iv->is_array() || iv->size() != 2)
        shape_error("density.interval: expected [lo, hi]");
      piece.lo = to_double((*iv)[0], "density.interval[0]");
      piece.hi = to_double((*iv)[1], "density.interval[1]");
      std::string text = require_str(d, "expr", "density");
      Expr rho = Expr::parse(text, "t");
      piece.rho = [rho](double t) { return rho(t); };
      piece.label = text;
      if (const Json* xp = find(d, "exponents")) {
        piece.exp_lo = opt_num(*xp, "left", 0.0, "density.exponents");
        piece.exp_hi = opt_num(*xp, "right", 0.0, "density.exponents");
        piece.exp_inf = opt_num(*xp, "infinity", -2.0, "density.exponents");
      }
      m.densities.push_back(std::move(piece));
    }
  }
  return m;
}

ZoneSpec zone_from_json(const Json& j) {
  if (!j.is_object()) shape_error("zone: expected an object");
  ZoneSpec z;
  z.mu0r = require_num(j, "mu0r", "zone");
  if (const Json* gaps = find(j, "gaps")) {
    if (!gaps->is_array()) shape_error("zone.gaps: expected an array");
    for (const Json& g : *gaps) {
      ZoneGap gap;
      gap.mul = require_num(g, "mul", "gap");
      gap.mur = require_num(g, "mur", "gap");
      gap.xi = require_num(g, "xi", "gap");
      gap.eps = int(opt_num(g, "eps", 1.0, "gap"));
      z.gaps.push_back(gap);
    }
  }
  if (const Json* tail = find(j, "tail")) {
    z.tail.mul = Expr::parse(require_str(*tail, "mul_expr", "zone.tail"), "j");
    z.tail.width =
        Expr::parse(require_str(*tail, "gap_expr", "zone.tail"), "j");
  }
  double n = opt_num(j, "truncation", 0.0, "zone");
  if (n < 0 || n != std::floor(n))
    shape_error("zone.truncation: expected a nonnegative integer");
  z.truncation = int(n);
  return z;
}

PotentialSpec potential_from_json(const Json& j) {
  if (!j.is_object()) shape_error("potential: expected an object");
  const Json* q = find(j, "q");
  const Json* samples = find(j, "samples");
  if (q && samples)
    shape_error("potential: 'q' and 'samples' are mutually exclusive");
  if (samples) {
    if (!samples->is_array())
      shape_error("potential.samples: expected an array");
    std::vector<std::array<double, 2>> pts;
    for (const Json& p : *samples) {
      if (!p.is_array() || p.size() != 2)
        shape_error("potential.samples[]: expected [x, q]");
      pts.push_back({to_double(p[0], "potential.samples[][0]"),
                     to_double(p[1], "potential.samples[][1]")});
    }
    return PotentialSpec::sampled(std::move(pts));
  }
  if (q) {
    if (q->is_null()) return PotentialSpec();
    if (!q->is_string()) shape_error("potential.q: expected a string");
    return PotentialSpec::closed_form(q->get<std::string>());
  }
  return PotentialSpec();
}

WeightFunction weight_from_json(const Json& j) {
  if (!j.is_object()) shape_error("weight: expected an object");
  const Json* r = find(j, "r");
  if (!r) r = find(j, "q");
  if (!r || !r->is_string())
    shape_error("weight: missing closed form 'r'");
  WeightFunction w;
  w.r = Expr::parse(r->get<std::string>(), "x");
  const Json* xp = find(j, "exponents");
  if (!xp) shape_error("weight: missing 'exponents'");
  w.alpha_plus = require_num(*xp, "plus", "weight.exponents");
  w.alpha_minus = require_num(*xp, "minus", "weight.exponents");
  return w;
}

// ---------------------------------------------------------------------------
// serialization helpers

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

Json mult_json(const Multiplicity& m) {
  Json j = Json::object();
  switch (m.kind) {
    case Multiplicity::Kind::finite:
      j["kind"] = "finite";
      j["value"] = m.k;
      break;
    case Multiplicity::Kind::at_least:
      j["kind"] = "at_least";
      j["value"] = m.k;
      break;
    case Multiplicity::Kind::infinite:
      j["kind"] = "infinite";
      j["value"] = nullptr;
      break;
  }
  j["text"] = m.str();
  return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

bool toml_path(const std::string& path) {
  return path.size() >= 5 && path.compare(path.size() - 5, 5, ".toml") == 0;
}

}  // namespace

// ---------------------------------------------------------------------------
// public parsing entry points

SpectralMeasure parse_measure(const std::string& text, bool toml) {
  return measure_from_json(parse_any(text, toml));
}

WeylCoefficient parse_weyl(const std::string& text, bool toml) {
  Json j = parse_any(text, toml);
  WeylCoefficient w;
  w.measure = measure_from_json(j);
  w.C = opt_num(j, "C", 0.0, "weyl");
  return w;
}

ZoneSpec parse_zone(const std::string& text, bool toml) {
  return zone_from_json(parse_any(text, toml));
}

PotentialSpec parse_potential(const std::string& text, bool toml) {
  return potential_from_json(parse_any(text, toml));
}

WeightFunction parse_weight(const std::string& text, bool toml) {
  return weight_from_json(parse_any(text, toml));
}

SpectralMeasure load_measure(const std::string& path) {
  return parse_measure(read_file(path), toml_path(path));
}

WeylCoefficient load_weyl(const std::string& path) {
  return parse_weyl(read_file(path), toml_path(path));
}

ZoneSpec load_zone(const std::string& path) {
  return parse_zone(read_file(path), toml_path(path));
}

PotentialSpec load_potential(const std::string& path) {
  return parse_potential(read_file(path), toml_path(path));
}

WeightFunction load_weight(const std::string& path) {
  return parse_weight(read_file(path), toml_path(path));
}

// ---------------------------------------------------------------------------
// reports

std::string to_json(const EigenReport& r) {
  Json j = Json::object();
  j["lambda"] = complex_json(r.lambda);
  j["case"] = eigen_case_name(r.kind);
  j["is_eigenvalue"] = r.is_eigenvalue;
  j["geometric"] = r.geometric;
  j["algebraic"] = mult_json(r.algebraic);
  j["ambiguous"] = r.ambiguous;
  Json trace = Json::array();
  for (const TraceEntry& e : r.trace) {
    Json t = Json::object();
    t["condition"] = e.condition;
    t["value"] = complex_json(e.value);
    t["holds"] = e.holds;
    t["ambiguous"] = e.ambiguous;
    trace.push_back(std::move(t));
  }
  j["trace"] = std::move(trace);
  return dump(j);
}

std::string to_json(const SpectrumReport& r) {
  Json j = Json::object();
  Json ess = Json::array();
  for (const Interval& part : r.essential.parts()) {
    Json p = Json::object();
    p["lo"] = num_json(part.lo);
    p["hi"] = num_json(part.hi);
    ess.push_back(std::move(p));
  }
  j["essential"] = std::move(ess);
  Json disc = Json::array();
  for (const DiscretePoint& d : r.discrete) {
    Json p = Json::object();
    p["lambda"] = complex_json(d.lambda);
    p["multiplicity"] = mult_json(d.mult);
    p["near_real_boundary"] = d.near_real_boundary;
    disc.push_back(std::move(p));
  }
  j["discrete"] = std::move(disc);
  j["degenerate"] = r.degenerate;
  return dump(j);
}

std::string to_json(const CriticalVerdict& v) {
  Json j = Json::object();
  j["zero_is_eigenvalue"] = v.zero_is_eigenvalue;
  j["eigenvector_neutral"] = v.eigenvector_neutral;
  j["zero_simple"] = v.zero_simple ? Json(*v.zero_simple) : Json(nullptr);
  j["singular_critical_point"] =
      v.singular_critical_point ? Json(*v.singular_critical_point)
                                : Json(nullptr);
  Json ev = Json::array();
  for (const auto& [name, value] : v.evidence) {
    Json e = Json::object();
    e["name"] = name;
    e["value"] = value;
    ev.push_back(std::move(e));
  }
  j["evidence"] = std::move(ev);
  return dump(j);
}

std::string validation_json(const std::vector<std::string>& violations) {
  Json j = Json::object();
  j["valid"] = violations.empty();
  j["violations"] = violations;
  return dump(j);
}

// ---------------------------------------------------------------------------
// CSV and files

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (!std::isfinite(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0) return "0";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string csv_table(const std::vector<std::string>& header,
                      const std::vector<std::vector<double>>& rows) {
  std::string out;
  for (size_t k = 0; k < header.size(); ++k) {
    if (k) out += ',';
    out += header[k];
  }
  out += '\n';
  for (const auto& row : rows) {
    for (size_t k = 0; k < row.size(); ++k) {
      if (k) out += ',';
      out += format_number(row[k]);
    }
    out += '\n';
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::invalid_spec, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content << std::flush;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Errc::invalid_spec, "cannot open '" + path + "' for writing");
  out << content;
}

}  // namespace indefspec::io
