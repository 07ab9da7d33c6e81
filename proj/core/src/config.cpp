#include "critwave/config.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <stdexcept>

#include <json.hpp>

namespace critwave {

namespace {

using nlohmann::json;

// --- enum <-> string tables -------------------------------------------------

template <class T>
struct NamePair {
  T value;
  const char* name;
};

constexpr NamePair<ExperimentKind> kExperiments[] = {
    {ExperimentKind::Params, "params"},     {ExperimentKind::Simulate, "simulate"},
    {ExperimentKind::DecayFit, "decay-fit"}, {ExperimentKind::Lifespan, "lifespan"},
    {ExperimentKind::Oracle, "oracle"},     {ExperimentKind::Picard, "picard"},
};
constexpr NamePair<SettingKind> kSettings[] = {
    {SettingKind::Euclidean, "euclidean"},
    {SettingKind::Heisenberg, "heisenberg"},
};
constexpr NamePair<Nonlinearity::Kind> kNonlinearities[] = {
    {Nonlinearity::Kind::Zero, "zero"},
    {Nonlinearity::Kind::AbsPower, "abs_power"},
    {Nonlinearity::Kind::SignedPower, "signed_power"},
};
constexpr NamePair<ProfileKind> kProfiles[] = {
    {ProfileKind::GaussianBump, "gaussian_bump"},
    {ProfileKind::PowerLawProfile, "power_law"},
    {ProfileKind::SlowDecayPositive, "slow_decay_positive"},
};
constexpr NamePair<DataPlacement> kPlacements[] = {
    {DataPlacement::OnU1, "u1"},
    {DataPlacement::OnU0, "u0"},
};
constexpr NamePair<NormColumn> kColumns[] = {
    {NormColumn::L2, "L2"},
    {NormColumn::H1dot, "H1dot"},
    {NormColumn::Linf, "Linf"},
    {NormColumn::Hneg, "Hneg"},
};

template <class T, std::size_t N>
std::string enum_name(const NamePair<T> (&table)[N], T value) {
  for (const auto& e : table)
    if (e.value == value) return e.name;
  throw std::logic_error("enum_name: unmapped value");
}

template <class T, std::size_t N>
T enum_value(const NamePair<T> (&table)[N], const std::string& name,
             const char* what) {
  for (const auto& e : table)
    if (name == e.name) return e.value;
  throw std::invalid_argument(std::string("config: unknown ") + what + " '" + name + "'");
}

// --- guarded field access -----------------------------------------------------

class Object {
 public:
  Object(const json& j, std::string where) : j_(j), where_(std::move(where)) {
    if (!j.is_object())
      throw std::invalid_argument("config: " + where_ + " must be an object");
  }

  template <class T>
  T get(const char* key, T fallback) const {
    mark(key);
    if (!j_.contains(key)) return fallback;
    return value<T>(key);
  }

  template <class T>
  std::optional<T> get_opt(const char* key) const {
    mark(key);
    if (!j_.contains(key) || j_.at(key).is_null()) return std::nullopt;
    return value<T>(key);
  }

  bool has(const char* key) const { return j_.contains(key); }

  const json& raw(const char* key) const {
    mark(key);
    if (!j_.contains(key))
      throw std::invalid_argument("config: missing key '" + std::string(key) + "' in " + where_);
    return j_.at(key);
  }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it)
      if (std::find(seen_.begin(), seen_.end(), it.key()) == seen_.end())
        throw std::invalid_argument("config: unknown key '" + it.key() + "' in " + where_);
  }

 private:
  template <class T>
  T value(const char* key) const {
    try {
      return j_.at(key).get<T>();
    } catch (const json::exception&) {
      throw std::invalid_argument("config: bad value for '" + std::string(key) +
                                  "' in " + where_);
    }
  }
  void mark(const char* key) const { seen_.push_back(key); }

  const json& j_;
  std::string where_;
  mutable std::vector<std::string> seen_;
};

json data_to_json(const DataSpec& d) {
  json j;
  j["kind"] = enum_name(kProfiles, d.kind);
  j["width"] = d.width;
  j["center"] = d.center;
  j["sigma"] = d.sigma;
  j["mu"] = d.mu;
  j["amplitude"] = d.amplitude;
  if (d.target_eps) j["target_eps"] = *d.target_eps;
  j["placement"] = enum_name(kPlacements, d.placement);
  return j;
}

DataSpec data_from_json(const json& j) {
  Object o(j, "data");
  DataSpec d;
  d.kind = enum_value(kProfiles, o.get<std::string>("kind", "gaussian_bump"), "profile kind");
  d.width = o.get<double>("width", 1.0);
  d.center = o.get<double>("center", 0.0);
  d.sigma = o.get<double>("sigma", 0.0);
  d.mu = o.get<double>("mu", 1.0);
  d.amplitude = o.get<double>("amplitude", 1.0);
  d.target_eps = o.get_opt<double>("target_eps");
  d.placement = enum_value(kPlacements, o.get<std::string>("placement", "u1"), "placement");
  o.finish();
  return d;
}

}  // namespace

std::string to_string(ExperimentKind kind) { return enum_name(kExperiments, kind); }

std::string RunConfig::to_json_text() const {
  json j;
  j["experiment"] = enum_name(kExperiments, experiment);
  j["setting"] = {{"kind", enum_name(kSettings, setting.kind)}, {"n", setting.n}};
  j["gamma"] = gamma;
  j["nonlinearity"] = enum_name(kNonlinearities, nonlinearity);
  if (power) j["power"] = *power;
  j["grid"] = {{"points", grid.points}, {"half_width", grid.half_width}};
  j["data"] = data_to_json(data);
  if (sharp_rate_margin) j["sharp_rate_margin"] = *sharp_rate_margin;
  j["controller"] = {{"dt_init", controller.dt_init},
                     {"dt_min", controller.dt_min},
                     {"rel_tol", controller.rel_tol},
                     {"blowup_threshold", controller.blowup_threshold}};
  j["horizon"] = horizon;
  j["sampling"] = {{"t0", sampling.t0}, {"ratio", sampling.ratio}};
  j["override_admissibility"] = override_admissibility;
  j["expect_global"] = expect_global;
  {
    json f;
    f["column"] = enum_name(kColumns, fit.column);
    if (fit.t_lo) f["t_lo"] = *fit.t_lo;
    if (fit.t_hi) f["t_hi"] = *fit.t_hi;
    j["fit"] = f;
  }
  j["input"] = input;
  j["ladder"] = ladder;
  {
    json oc = json::array();
    for (const auto& c : oracle.cases)
      oc.push_back({{"n", c.n}, {"gamma", c.gamma}, {"j", c.j}});
    j["oracle"] = {{"cases", oc},
                   {"t_lo", oracle.t_lo},
                   {"t_hi", oracle.t_hi},
                   {"t_points", oracle.t_points}};
  }
  j["picard_iterations"] = picard_iterations;
  return j.dump(2) + "\n";
}

RunConfig RunConfig::from_json_text(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("config: JSON parse error: ") + e.what());
  }
  Object o(j, "config");
  RunConfig c;
  c.experiment =
      enum_value(kExperiments, o.get<std::string>("experiment", "simulate"), "experiment");
  if (o.has("setting")) {
    Object s(o.raw("setting"), "setting");
    const auto kind = enum_value(kSettings, s.get<std::string>("kind", "euclidean"), "setting kind");
    const int n = s.get<int>("n", 1);
    s.finish();
    c.setting = kind == SettingKind::Euclidean ? Setting::euclidean(n)
                                               : Setting::heisenberg(n);
  }
  c.gamma = o.get<double>("gamma", 0.25);
  c.nonlinearity = enum_value(kNonlinearities,
                              o.get<std::string>("nonlinearity", "zero"), "nonlinearity");
  c.power = o.get_opt<double>("power");
  if (o.has("grid")) {
    Object g(o.raw("grid"), "grid");
    c.grid.points = g.get<int>("points", 512);
    c.grid.half_width = g.get<double>("half_width", 64.0);
    g.finish();
  }
  if (o.has("data")) c.data = data_from_json(o.raw("data"));
  c.sharp_rate_margin = o.get_opt<double>("sharp_rate_margin");
  if (o.has("controller")) {
    Object t(o.raw("controller"), "controller");
    c.controller.dt_init = t.get<double>("dt_init", 1e-3);
    c.controller.dt_min = t.get<double>("dt_min", 1e-9);
    c.controller.rel_tol = t.get<double>("rel_tol", 1e-6);
    c.controller.blowup_threshold = t.get<double>("blowup_threshold", 1e6);
    t.finish();
  }
  c.horizon = o.get<double>("horizon", 100.0);
  if (o.has("sampling")) {
    Object s(o.raw("sampling"), "sampling");
    c.sampling.t0 = s.get<double>("t0", 0.1);
    c.sampling.ratio = s.get<double>("ratio", 1.1);
    s.finish();
  }
  c.override_admissibility = o.get<bool>("override_admissibility", false);
  c.expect_global = o.get<bool>("expect_global", false);
  if (o.has("fit")) {
    Object f(o.raw("fit"), "fit");
    c.fit.column = enum_value(kColumns, f.get<std::string>("column", "L2"), "norm column");
    c.fit.t_lo = f.get_opt<double>("t_lo");
    c.fit.t_hi = f.get_opt<double>("t_hi");
    f.finish();
  }
  c.input = o.get<std::string>("input", "");
  c.ladder = o.get<std::vector<double>>("ladder", {});
  if (o.has("oracle")) {
    Object q(o.raw("oracle"), "oracle");
    if (q.has("cases")) {
      const json& arr = q.raw("cases");
      if (!arr.is_array()) throw std::invalid_argument("config: oracle.cases must be an array");
      for (const auto& item : arr) {
        Object ci(item, "oracle case");
        OracleCaseSpec cs;
        cs.n = ci.get<int>("n", 1);
        cs.gamma = ci.get<double>("gamma", 0.25);
        cs.j = ci.get<int>("j", 0);
        ci.finish();
        c.oracle.cases.push_back(cs);
      }
    }
    c.oracle.t_lo = q.get<double>("t_lo", 1.0);
    c.oracle.t_hi = q.get<double>("t_hi", 1e4);
    c.oracle.t_points = q.get<int>("t_points", 40);
    q.finish();
  }
  c.picard_iterations = o.get<int>("picard_iterations", 4);
  o.finish();
  return c;
}

std::string RunConfig::hash() const {
  const std::string text = to_json_text();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Nonlinearity RunConfig::make_nonlinearity(const ProblemParams& params) const {
  const double p = power.value_or(params.p);
  switch (nonlinearity) {
    case Nonlinearity::Kind::Zero: return Nonlinearity::zero();
    case Nonlinearity::Kind::AbsPower: return Nonlinearity::abs_power(p);
    case Nonlinearity::Kind::SignedPower: return Nonlinearity::signed_power(p);
  }
  throw std::logic_error("make_nonlinearity: unreachable");
}

DataSpec RunConfig::resolved_data() const {
  DataSpec d = data;
  if (sharp_rate_margin) {
    if (d.kind != ProfileKind::PowerLawProfile)
      throw std::invalid_argument("config: sharp_rate_margin requires the power_law profile");
    d.sigma = sharp_rate_sigma(setting.n, gamma, *sharp_rate_margin);
  }
  return d;
}

Grid RunConfig::make_grid() const {
  if (setting.kind != SettingKind::Euclidean)
    throw std::invalid_argument(
        "config: time evolution is Euclidean-only; the Heisenberg setting supports "
        "the params experiment");
  return Grid::make(setting.n, grid.points, grid.half_width);
}

}  // namespace critwave
