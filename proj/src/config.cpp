#include "hxyz/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include "hxyz/errors.hpp"

namespace hxyz {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  return out;
}

// Recursive descent over: expr = term {(+|-) term}; term = unary {(*|/) unary};
// unary = [-|+] unary | atom; atom = number | pi | sqrt(expr) | (expr).
class ExpressionParser {
 public:
  explicit ExpressionParser(const std::string& s) : s_(s) {}

  double parse() {
    const double v = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + s_.substr(pos_, 1) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ConfigError("bad numeric expression '" + s_ + "': " + what);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  double expr() {
    double v = term();
    for (;;) {
      if (eat('+')) v += term();
      else if (eat('-')) v -= term();
      else return v;
    }
  }
  double term() {
    double v = unary();
    for (;;) {
      if (eat('*')) v *= unary();
      else if (eat('/')) v /= unary();
      else return v;
    }
  }
  double unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return atom();
  }
  double atom() {
    skip();
    if (eat('(')) {
      const double v = expr();
      if (!eat(')')) fail("missing ')'");
      return v;
    }
    if (s_.compare(pos_, 2, "pi") == 0) {
      pos_ += 2;
      return std::numbers::pi;
    }
    if (s_.compare(pos_, 4, "sqrt") == 0) {
      pos_ += 4;
      if (!eat('(')) fail("sqrt needs '('");
      const double v = expr();
      if (!eat(')')) fail("missing ')'");
      if (v < 0.0) fail("sqrt of a negative number");
      return std::sqrt(v);
    }
    const char* begin = s_.c_str() + pos_;
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin) fail(pos_ < s_.size() ? "unexpected '" + s_.substr(pos_, 1) + "'" : "unexpected end");
    pos_ += static_cast<std::size_t>(end - begin);
    return v;
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace

double evaluate_expression(const std::string& text) {
  const double v = ExpressionParser(text).parse();
  if (!std::isfinite(v)) throw ConfigError("numeric expression '" + text + "' is not finite");
  return v;
}

// ---------------------------------------------------------------------------

ConfigDocument ConfigDocument::parse(const std::string& text) {
  ConfigDocument doc;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  std::set<std::string> seen;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(line_no) + ": ";
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(where + "unterminated section header");
      const std::string name = trim(line.substr(1, line.size() - 2));
      if (name.empty()) throw ConfigError(where + "empty section name");
      if (!seen.insert(name).second) throw ConfigError(where + "duplicate section [" + name + "]");
      doc.sections_.push_back({name, {}});
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(where + "expected 'key = value'");
    if (doc.sections_.empty()) throw ConfigError(where + "key outside of any section");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(where + "empty key");
    if (value.empty()) throw ConfigError(where + "empty value for '" + key + "'");
    auto& entries = doc.sections_.back().entries;
    for (const auto& kv : entries)
      if (kv.first == key) throw ConfigError(where + "duplicate key '" + key + "'");
    entries.emplace_back(key, value);
  }
  return doc;
}

ConfigDocument ConfigDocument::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

const ConfigDocument::Section* ConfigDocument::find(const std::string& section) const {
  for (const auto& s : sections_)
    if (s.name == section) return &s;
  return nullptr;
}

std::optional<std::string> ConfigDocument::get(const std::string& section, const std::string& key) const {
  const Section* s = find(section);
  if (!s) return std::nullopt;
  for (const auto& kv : s->entries)
    if (kv.first == key) return kv.second;
  return std::nullopt;
}

void ConfigDocument::set(const std::string& path, const std::string& value) {
  const auto dot = path.rfind('.');
  if (dot == std::string::npos || dot == 0 || dot + 1 == path.size())
    throw ConfigError("parameter path '" + path + "' must look like <section>.<key>");
  const std::string section = path.substr(0, dot), key = path.substr(dot + 1);
  auto it = std::find_if(sections_.begin(), sections_.end(), [&](const Section& s) { return s.name == section; });
  if (it == sections_.end()) {
    sections_.push_back({section, {}});
    it = std::prev(sections_.end());
  }
  for (auto& kv : it->entries) {
    if (kv.first == key) {
      kv.second = value;
      return;
    }
  }
  it->entries.emplace_back(key, value);
}

std::string ConfigDocument::to_text() const {
  std::ostringstream os;
  for (const auto& s : sections_) {
    os << '[' << s.name << "]\n";
    for (const auto& kv : s.entries) os << kv.first << " = " << kv.second << '\n';
  }
  return os.str();
}

// ---------------------------------------------------------------------------

const char* mode_name(Mode m) {
  switch (m) {
    case Mode::ic1: return "ic1";
    case Mode::ic2: return "ic2";
    case Mode::rwa: return "rwa";
    case Mode::perturbation: return "perturbation";
    case Mode::numeric: return "numeric";
  }
  return "?";
}

namespace {

const std::set<std::string> kCombined = {"omega_plus", "omega_minus", "lambda_m", "lambda_p", "lambda_z"};
const std::set<std::string> kRaw = {"lambda_x", "lambda_y", "lambda_z", "omega_1", "omega_2"};
const std::string kModelPrefix = "model.";

// Typed access to one section with unknown-key detection.
class SectionReader {
 public:
  SectionReader(const ConfigDocument::Section* s, std::string name, std::set<std::string> allowed)
      : s_(s), name_(std::move(name)) {
    if (!s_) return;
    for (const auto& kv : s_->entries)
      if (!allowed.count(kv.first)) throw ConfigError("unknown key '" + kv.first + "' in [" + name_ + "]");
  }

  bool present() const { return s_ != nullptr; }

  std::optional<std::string> text(const std::string& key) const {
    if (!s_) return std::nullopt;
    for (const auto& kv : s_->entries)
      if (kv.first == key) return kv.second;
    return std::nullopt;
  }

  std::optional<double> number(const std::string& key) const {
    const auto t = text(key);
    if (!t) return std::nullopt;
    try {
      return evaluate_expression(*t);
    } catch (const ConfigError& e) {
      throw ConfigError("[" + name_ + "] " + key + ": " + e.what());
    }
  }

  double number_or(const std::string& key, double fallback) const { return number(key).value_or(fallback); }

  double required(const std::string& key) const {
    const auto v = number(key);
    if (!v) throw ConfigError("[" + name_ + "] requires '" + key + "'");
    return *v;
  }

 private:
  const ConfigDocument::Section* s_;
  std::string name_;
};

class ProfileResolver {
 public:
  explicit ProfileResolver(const ConfigDocument& doc) : doc_(doc) {}

  bool has(const std::string& name) const { return doc_.find(kModelPrefix + name) != nullptr; }

  DriveProfile resolve(const std::string& name) {
    if (auto it = done_.find(name); it != done_.end()) return it->second;
    const auto* section = doc_.find(kModelPrefix + name);
    if (!section) throw ConfigError("profile '" + name + "' is not defined (no [model." + name + "])");
    if (!active_.insert(name).second) throw ConfigError("cyclic 'base' reference through profile '" + name + "'");

    const std::string sname = kModelPrefix + name;
    const auto kind = SectionReader(section, sname, {"kind", "value", "amplitude", "frequency", "phase", "factor", "base"})
                          .text("kind");
    if (!kind) throw ConfigError("[" + sname + "] requires 'kind'");
    DriveProfile p;
    if (*kind == "constant") {
      const SectionReader r(section, sname, {"kind", "value"});
      p = DriveProfile::constant(r.required("value"));
    } else if (*kind == "sinusoid") {
      const SectionReader r(section, sname, {"kind", "amplitude", "frequency", "phase"});
      const double beta = r.required("frequency");
      if (beta == 0.0) throw ConfigError("[" + sname + "] frequency must be nonzero; use kind = constant");
      p = DriveProfile::sinusoid(r.required("amplitude"), beta, r.number_or("phase", 0.0));
    } else if (*kind == "scaled") {
      const SectionReader r(section, sname, {"kind", "factor", "base"});
      const auto base = r.text("base");
      if (!base) throw ConfigError("[" + sname + "] requires 'base'");
      p = DriveProfile::scaled(r.required("factor"), resolve(*base));
    } else {
      throw ConfigError("[" + sname + "] unknown kind '" + *kind + "' (constant, sinusoid, scaled)");
    }
    active_.erase(name);
    done_.emplace(name, p);
    return p;
  }

  DriveProfile resolve_or_zero(const std::string& name) {
    return has(name) ? resolve(name) : DriveProfile::constant(0.0);
  }

 private:
  const ConfigDocument& doc_;
  std::map<std::string, DriveProfile> done_;
  std::set<std::string> active_;
};

double angle_from(const SectionReader& r, const std::string& key) { return r.number_or(key, 0.0); }

DriveProfile::Sinusoid read_drive(const ConfigDocument& doc, const std::string& name, bool allow_phase) {
  const auto* s = doc.find(name);
  if (!s) throw ConfigError("missing section [" + name + "]");
  std::set<std::string> keys = {"amplitude", "frequency"};
  if (allow_phase) keys.insert("phase");
  const SectionReader r(s, name, keys);
  DriveProfile::Sinusoid d;
  d.amplitude = r.required("amplitude");
  d.frequency = r.required("frequency");
  d.phase = r.number_or("phase", 0.0);
  if (d.frequency <= 0.0) throw ConfigError("[" + name + "] frequency must be positive");
  return d;
}

FourState read_custom(const SectionReader& run) {
  const auto amps = run.text("amplitudes");
  if (!amps) throw ConfigError("[run] initial = custom requires 'amplitudes' (re, im pairs in basis order)");
  const auto parts = split_list(*amps);
  if (parts.size() != 8) throw ConfigError("[run] amplitudes needs 8 numbers (re, im for 4 amplitudes)");
  FourState s;
  const std::string basis = run.text("basis").value_or("uncoupled");
  if (basis == "uncoupled") s.basis = Basis::uncoupled;
  else if (basis == "coupled") s.basis = Basis::coupled;
  else throw ConfigError("[run] basis must be uncoupled or coupled");
  for (std::size_t i = 0; i < 4; ++i) {
    try {
      s.f[i] = cplx(evaluate_expression(parts[2 * i]), evaluate_expression(parts[2 * i + 1]));
    } catch (const ConfigError& e) {
      throw ConfigError(std::string("[run] amplitudes: ") + e.what());
    }
  }
  if (std::abs(s.norm_squared() - 1.0) > 1e-9) throw ConfigError("[run] amplitudes are not normalized");
  return s;
}

}  // namespace

RunConfig build_run_config(const ConfigDocument& doc) {
  static const std::set<std::string> kFixed = {"run", "time", "ic1", "ic2", "rwa", "rwa.drive",
                                              "perturbation", "perturbation.drive", "sweep"};
  std::vector<std::string> profiles;
  for (const auto& s : doc.sections()) {
    if (s.name.rfind(kModelPrefix, 0) == 0) {
      const std::string p = s.name.substr(kModelPrefix.size());
      if (!kCombined.count(p) && !kRaw.count(p)) throw ConfigError("unknown profile section [" + s.name + "]");
      profiles.push_back(p);
    } else if (!kFixed.count(s.name)) {
      throw ConfigError("unknown section [" + s.name + "]");
    }
  }

  RunConfig cfg;
  cfg.source = doc;

  const SectionReader run(doc.find("run"), "run", {"mode", "initial", "amplitudes", "basis"});
  if (!run.present()) throw ConfigError("missing section [run]");
  const auto mode = run.text("mode");
  if (!mode) throw ConfigError("[run] requires 'mode'");
  if (*mode == "ic1") cfg.mode = Mode::ic1;
  else if (*mode == "ic2") cfg.mode = Mode::ic2;
  else if (*mode == "rwa") cfg.mode = Mode::rwa;
  else if (*mode == "perturbation") cfg.mode = Mode::perturbation;
  else if (*mode == "numeric") cfg.mode = Mode::numeric;
  else throw ConfigError("[run] unknown mode '" + *mode + "' (ic1, ic2, rwa, perturbation, numeric)");

  cfg.initial = run.text("initial").value_or("pp");
  static const std::set<std::string> kNamed = {"pp", "mm", "pm", "mp", "bell_s", "bell_a",
                                              "phi1", "phi2", "phi3", "phi4", "custom"};
  if (!kNamed.count(cfg.initial)) throw ConfigError("[run] unknown initial state '" + cfg.initial + "'");
  if (cfg.initial == "custom") cfg.custom = read_custom(run);
  else if (run.text("amplitudes") || run.text("basis"))
    throw ConfigError("[run] amplitudes/basis are only used with initial = custom");

  const SectionReader time(doc.find("time"), "time", {"t_end", "samples", "step", "method"});
  cfg.time.t_end = time.number_or("t_end", cfg.time.t_end);
  if (!(cfg.time.t_end > 0.0)) throw ConfigError("[time] t_end must be positive");
  const double samples = time.number_or("samples", static_cast<double>(cfg.time.samples));
  if (samples < 2.0 || samples != std::floor(samples)) throw ConfigError("[time] samples must be an integer >= 2");
  cfg.time.samples = static_cast<std::size_t>(samples);
  cfg.step = time.number("step");
  if (cfg.step && !(*cfg.step > 0.0)) throw ConfigError("[time] step must be positive");
  const std::string method = time.text("method").value_or("rk4_fixed");
  if (method == "rk4_fixed") cfg.method = IntegratorMethod::rk4_fixed;
  else if (method == "rk4_doubling") cfg.method = IntegratorMethod::rk4_doubling;
  else throw ConfigError("[time] method must be rk4_fixed or rk4_doubling");

  if (const auto* sw = doc.find("sweep")) {
    const SectionReader r(sw, "sweep", {"parameter", "values"});
    SweepSpec spec;
    spec.parameter = r.text("parameter").value_or("");
    if (spec.parameter.empty()) throw ConfigError("[sweep] requires 'parameter'");
    if (spec.parameter.rfind("sweep.", 0) == 0 || spec.parameter.rfind("run.mode", 0) == 0)
      throw ConfigError("[sweep] cannot sweep '" + spec.parameter + "'");
    const auto values = r.text("values");
    if (!values) throw ConfigError("[sweep] requires 'values'");
    spec.values = split_list(*values);
    for (const auto& v : spec.values) {
      if (v.empty()) throw ConfigError("[sweep] empty entry in values");
      evaluate_expression(v);
    }
    cfg.sweep = spec;
  }

  // Which physics sections are present.
  const bool has_ic1 = doc.find("ic1"), has_ic2 = doc.find("ic2");
  const bool has_rwa = doc.find("rwa") || doc.find("rwa.drive");
  const bool has_pert = doc.find("perturbation") || doc.find("perturbation.drive");
  const int n_setups = int(has_ic1) + int(has_ic2) + int(has_rwa) + int(has_pert);
  if (n_setups > 1) throw ConfigError("at most one of [ic1], [ic2], [rwa], [perturbation] may be given");
  const auto require = [&](bool present, const char* section) {
    if (!present) throw ConfigError(std::string("mode ") + mode_name(cfg.mode) + " requires section [" + section + "]");
  };
  switch (cfg.mode) {
    case Mode::ic1: require(has_ic1, "ic1"); break;
    case Mode::ic2: require(has_ic2, "ic2"); break;
    case Mode::rwa: require(has_rwa, "rwa"); break;
    case Mode::perturbation: require(has_pert, "perturbation"); break;
    case Mode::numeric: break;
  }

  bool any_combined = false, any_raw = false;
  for (const auto& p : profiles) {
    if (p == "lambda_z") continue;
    (kCombined.count(p) ? any_combined : any_raw) = true;
  }
  if (any_combined && any_raw)
    throw ConfigError("model profiles mix combined (omega_plus, lambda_m, ...) and raw (lambda_x, omega_1, ...) names");

  ProfileResolver res(doc);
  const auto only_allowed = [&](const std::set<std::string>& allowed, const char* context) {
    for (const auto& p : profiles)
      if (!allowed.count(p)) throw ConfigError("profile [model." + p + "] is not used with " + context);
  };

  if (has_rwa) {
    only_allowed({"lambda_z"}, "[rwa]; the drive goes in [rwa.drive]");
    const SectionReader r(doc.find("rwa"), "rwa", {"mode", "static_value", "theta10"});
    if (!r.present()) throw ConfigError("missing section [rwa]");
    RwaSetup s;
    const std::string m = r.text("mode").value_or("lambda_drive");
    if (m == "lambda_drive") s.mode = RwaMode::lambda_drive;
    else if (m == "field_drive") s.mode = RwaMode::field_drive;
    else throw ConfigError("[rwa] mode must be lambda_drive or field_drive");
    s.static_value = r.required("static_value");
    s.theta10 = angle_from(r, "theta10");
    s.drive = read_drive(doc, "rwa.drive", true);
    s.lambda_z = res.resolve_or_zero("lambda_z");
    cfg.rwa = s;
    cfg.model = rwa_model(s);
  } else if (has_pert) {
    only_allowed({}, "[perturbation]");
    const SectionReader r(doc.find("perturbation"), "perturbation", {"omega_plus"});
    if (!r.present()) throw ConfigError("missing section [perturbation]");
    PerturbationSetup s;
    s.omega_plus = r.required("omega_plus");
    s.drive = read_drive(doc, "perturbation.drive", false);
    cfg.perturbation = s;
    ModelParams p;
    p.omega_plus = DriveProfile::constant(s.omega_plus);
    p.lambda_m = DriveProfile::sinusoid(s.drive.amplitude, s.drive.frequency, 0.0);
    cfg.model = p;
  } else if (has_ic2) {
    if (any_raw) throw ConfigError("[ic2] needs combined profile names (lambda_m, lambda_p, lambda_z)");
    only_allowed({"lambda_m", "lambda_p", "lambda_z"}, "[ic2]; omega_+ and omega_- are derived");
    const SectionReader r(doc.find("ic2"), "ic2", {"kappa", "chi", "theta10", "theta20"});
    Ic2Setup s;
    s.kappa = r.required("kappa");
    s.chi = r.number_or("chi", 1.0);
    s.theta10 = angle_from(r, "theta10");
    s.theta20 = angle_from(r, "theta20");
    s.lambda_m = res.resolve_or_zero("lambda_m");
    s.lambda_p = res.resolve_or_zero("lambda_p");
    s.lambda_z = res.resolve_or_zero("lambda_z");
    const Admissibility a = ic2_admissible(s);
    if (!a) throw AdmissibilityError("IC2 parameters not admissible: " + a.reason);
    cfg.ic2 = s;
    cfg.model.lambda_m = s.lambda_m;
    cfg.model.lambda_p = s.lambda_p;
    cfg.model.lambda_z = s.lambda_z;
  } else {
    if (any_raw) {
      cfg.model = ModelParams::from_exchange(res.resolve_or_zero("lambda_x"), res.resolve_or_zero("lambda_y"),
                                             res.resolve_or_zero("lambda_z"), res.resolve_or_zero("omega_1"),
                                             res.resolve_or_zero("omega_2"));
    } else {
      cfg.model.omega_plus = res.resolve_or_zero("omega_plus");
      cfg.model.omega_minus = res.resolve_or_zero("omega_minus");
      cfg.model.lambda_z = res.resolve_or_zero("lambda_z");
      cfg.model.lambda_m = res.resolve_or_zero("lambda_m");
      cfg.model.lambda_p = res.resolve_or_zero("lambda_p");
    }
    if (has_ic1) {
      if (any_raw) throw ConfigError("[ic1] needs combined profile names (omega_plus, lambda_m, ...)");
      const SectionReader r(doc.find("ic1"), "ic1", {"k", "k_second", "phase_convention"});
      const double k = r.required("k"), k2 = r.number_or("k_second", 0.0);
      const std::string conv = r.text("phase_convention").value_or("signed");
      PhaseConvention pc;
      if (conv == "signed") pc = PhaseConvention::signed_field;
      else if (conv == "unsigned") pc = PhaseConvention::unsigned_eta;
      else throw ConfigError("[ic1] phase_convention must be signed or unsigned");
      cfg.ic1 = Ic1Setup::from_ratios(k, k2, pc);
      if (!res.has("lambda_m")) cfg.model.lambda_m = DriveProfile::scaled(k, cfg.model.omega_plus);
      if (!res.has("lambda_p")) cfg.model.lambda_p = DriveProfile::scaled(k2, cfg.model.omega_minus);
    }
  }

  if (cfg.mode == Mode::rwa && cfg.initial != "phi1" && cfg.initial != "phi2")
    throw ConfigError("mode rwa evolves phi1 or phi2 only");
  if (cfg.mode == Mode::perturbation && cfg.initial != "pp") throw ConfigError("mode perturbation starts from pp only");
  return cfg;
}

}  // namespace hxyz
