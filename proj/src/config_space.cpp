#include "hyperimp/config_space.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace hyperimp {

namespace {

constexpr int kMaxCategories = 64;  // category subsets are stored as 64-bit masks

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

}  // namespace

bool kind_is_numeric(DomainKind k) {
  return k == DomainKind::Continuous || k == DomainKind::ContinuousLog || k == DomainKind::Integer;
}

bool kind_is_categorical(DomainKind k) {
  return k == DomainKind::Categorical || k == DomainKind::Boolean;
}

const char* kind_name(DomainKind k) {
  switch (k) {
    case DomainKind::Continuous: return "continuous";
    case DomainKind::ContinuousLog: return "continuous-log";
    case DomainKind::Integer: return "integer";
    case DomainKind::Categorical: return "categorical";
    case DomainKind::Boolean: return "boolean";
  }
  return "?";
}

DomainKind kind_from_name(const std::string& name) {
  if (name == "continuous") return DomainKind::Continuous;
  if (name == "continuous-log") return DomainKind::ContinuousLog;
  if (name == "integer") return DomainKind::Integer;
  if (name == "categorical") return DomainKind::Categorical;
  if (name == "boolean") return DomainKind::Boolean;
  fail("unknown domain kind '" + name + "'");
}

void HyperparameterDomain::validate() const {
  if (name.empty()) fail("domain name must not be empty");
  if (kind_is_numeric(kind)) {
    if (!std::isfinite(lower) || !std::isfinite(upper))
      fail("domain '" + name + "': bounds must be finite");
    if (kind == DomainKind::Integer) {
      if (std::nearbyint(lower) != lower || std::nearbyint(upper) != upper)
        fail("domain '" + name + "': integer bounds must be whole numbers");
      if (lower > upper) fail("domain '" + name + "': lower > upper");
    } else {
      if (!(lower < upper)) fail("domain '" + name + "': lower must be < upper");
      if (kind == DomainKind::ContinuousLog && !(lower > 0.0))
        fail("domain '" + name + "': continuous-log requires lower > 0");
    }
  } else {
    if (categories.empty()) fail("domain '" + name + "': categories must be nonempty");
    if (kind == DomainKind::Boolean && categories.size() != 2)
      fail("domain '" + name + "': boolean kind requires exactly two categories");
    if (categories.size() > kMaxCategories)
      fail("domain '" + name + "': at most 64 categories supported");
    std::set<std::string> seen(categories.begin(), categories.end());
    if (seen.size() != categories.size())
      fail("domain '" + name + "': duplicate category label");
  }
}

bool param_value_equal(const ParamValue& a, const ParamValue& b) { return a == b; }

ConfigurationSpace::ConfigurationSpace(std::string algorithm,
                                       std::vector<HyperparameterDomain> domains)
    : algorithm_(std::move(algorithm)), domains_(std::move(domains)) {
  if (domains_.empty()) fail("configuration space needs at least one domain");
  for (std::size_t i = 0; i < domains_.size(); ++i) {
    domains_[i].validate();
    if (!index_.emplace(domains_[i].name, static_cast<int>(i)).second)
      fail("duplicate domain name '" + domains_[i].name + "'");
  }
}

int ConfigurationSpace::index_of(const std::string& name) const {
  auto it = index_.find(name);
  return it == index_.end() ? -1 : it->second;
}

void ConfigurationSpace::check_value(int dim, const ParamValue& v) const {
  const auto& d = domain(dim);
  if (kind_is_numeric(d.kind)) {
    if (!std::holds_alternative<double>(v))
      fail("domain '" + d.name + "': expected a numeric value");
    double x = std::get<double>(v);
    if (!std::isfinite(x) || x < d.lower || x > d.upper)
      fail("domain '" + d.name + "': value out of bounds");
    if (d.kind == DomainKind::Integer && std::abs(x - std::nearbyint(x)) > 1e-9)
      fail("domain '" + d.name + "': value must be an integer");
  } else {
    if (!std::holds_alternative<std::string>(v))
      fail("domain '" + d.name + "': expected a category label");
    const auto& label = std::get<std::string>(v);
    bool found = false;
    for (const auto& c : d.categories) found = found || c == label;
    if (!found) fail("domain '" + d.name + "': unknown category '" + label + "'");
  }
}

void ConfigurationSpace::check_configuration(const Configuration& c) const {
  if (static_cast<int>(c.values.size()) != dimension())
    fail("configuration has " + std::to_string(c.values.size()) + " values, space has " +
         std::to_string(dimension()) + " domains");
  for (int i = 0; i < dimension(); ++i) check_value(i, c.values[static_cast<std::size_t>(i)]);
}

double ConfigurationSpace::value_to_internal(int dim, const ParamValue& v) const {
  check_value(dim, v);
  const auto& d = domain(dim);
  switch (d.kind) {
    case DomainKind::Continuous:
      return (std::get<double>(v) - d.lower) / (d.upper - d.lower);
    case DomainKind::ContinuousLog:
      return (std::log(std::get<double>(v)) - std::log(d.lower)) /
             (std::log(d.upper) - std::log(d.lower));
    case DomainKind::Integer: {
      if (d.upper == d.lower) return 0.0;  // single-point domain
      return (std::get<double>(v) - d.lower) / (d.upper - d.lower);
    }
    case DomainKind::Categorical:
    case DomainKind::Boolean: {
      const auto& label = std::get<std::string>(v);
      for (std::size_t i = 0; i < d.categories.size(); ++i)
        if (d.categories[i] == label) return static_cast<double>(i);
      break;
    }
  }
  fail("unreachable");
}

ParamValue ConfigurationSpace::value_from_internal(int dim, double x) const {
  const auto& d = domain(dim);
  if (kind_is_categorical(d.kind)) {
    auto idx = static_cast<long long>(std::llround(x));
    if (idx < 0 || idx >= d.category_count())
      fail("domain '" + d.name + "': category index out of range");
    return d.categories[static_cast<std::size_t>(idx)];
  }
  if (x < -1e-9 || x > 1.0 + 1e-9)
    fail("domain '" + d.name + "': internal value outside [0,1]");
  double t = std::min(1.0, std::max(0.0, x));
  switch (d.kind) {
    case DomainKind::Continuous:
      return d.lower + t * (d.upper - d.lower);
    case DomainKind::ContinuousLog:
      return std::exp(std::log(d.lower) + t * (std::log(d.upper) - std::log(d.lower)));
    case DomainKind::Integer:
      return static_cast<double>(std::llround(d.lower + t * (d.upper - d.lower)));
    default:
      break;
  }
  fail("unreachable");
}

std::vector<double> ConfigurationSpace::to_internal(const Configuration& c) const {
  std::vector<double> out(static_cast<std::size_t>(dimension()));
  for (int i = 0; i < dimension(); ++i)
    out[static_cast<std::size_t>(i)] = value_to_internal(i, c.values[static_cast<std::size_t>(i)]);
  return out;
}

Configuration ConfigurationSpace::from_internal(const std::vector<double>& x) const {
  if (static_cast<int>(x.size()) != dimension()) fail("internal vector has wrong dimension");
  Configuration c;
  c.values.reserve(x.size());
  for (int i = 0; i < dimension(); ++i)
    c.values.push_back(value_from_internal(i, x[static_cast<std::size_t>(i)]));
  return c;
}

std::vector<Configuration> ConfigurationSpace::sample_uniform(int count, std::uint64_t seed) const {
  if (count < 1) fail("sample count must be >= 1");
  std::mt19937_64 rng(seed);
  std::vector<Configuration> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    Configuration c;
    c.values.reserve(domains_.size());
    for (const auto& d : domains_) {
      switch (d.kind) {
        case DomainKind::Continuous:
          c.values.emplace_back(std::uniform_real_distribution<double>(d.lower, d.upper)(rng));
          break;
        case DomainKind::ContinuousLog: {
          double t = std::uniform_real_distribution<double>(std::log(d.lower), std::log(d.upper))(rng);
          c.values.emplace_back(std::exp(t));
          break;
        }
        case DomainKind::Integer: {
          auto lo = static_cast<long long>(d.lower), hi = static_cast<long long>(d.upper);
          c.values.emplace_back(static_cast<double>(std::uniform_int_distribution<long long>(lo, hi)(rng)));
          break;
        }
        case DomainKind::Categorical:
        case DomainKind::Boolean: {
          auto idx = std::uniform_int_distribution<std::size_t>(0, d.categories.size() - 1)(rng);
          c.values.emplace_back(d.categories[idx]);
          break;
        }
      }
    }
    out.push_back(std::move(c));
  }
  return out;
}

ConfigurationSpace define_space(std::string algorithm, std::vector<HyperparameterDomain> domains) {
  return ConfigurationSpace(std::move(algorithm), std::move(domains));
}

namespace {

HyperparameterDomain continuous(std::string name, double lo, double hi) {
  return {std::move(name), DomainKind::Continuous, lo, hi, {}};
}
HyperparameterDomain continuous_log(std::string name, double lo, double hi) {
  return {std::move(name), DomainKind::ContinuousLog, lo, hi, {}};
}
HyperparameterDomain integer(std::string name, double lo, double hi) {
  return {std::move(name), DomainKind::Integer, lo, hi, {}};
}
HyperparameterDomain categorical(std::string name, std::vector<std::string> cats) {
  return {std::move(name), DomainKind::Categorical, 0, 0, std::move(cats)};
}
HyperparameterDomain boolean(std::string name) {
  return {std::move(name), DomainKind::Boolean, 0, 0, {"true", "false"}};
}

HyperparameterDomain imputation() { return categorical("imputation", {"mean", "median", "mode"}); }

std::map<std::string, ConfigurationSpace> make_builtin_spaces() {
  std::map<std::string, ConfigurationSpace> m;
  m.emplace("svm", define_space("svm", {
                       continuous_log("C", std::pow(2.0, -5), std::pow(2.0, 15)),
                       categorical("kernel", {"sigmoid", "rbf"}),
                       continuous("coef0", -1.0, 1.0),
                       continuous_log("gamma", std::pow(2.0, -15), std::pow(2.0, 3)),
                       imputation(),
                       boolean("shrinking"),
                       continuous_log("tol", 1e-5, 1e-1),
                   }));
  m.emplace("random_forest", define_space("random_forest", {
                                 boolean("bootstrap"),
                                 continuous("max_features", 0.1, 0.9),
                                 integer("min_samples_leaf", 1, 20),
                                 integer("min_samples_split", 2, 20),
                                 imputation(),
                                 categorical("criterion", {"entropy", "gini"}),
                             }));
  m.emplace("adaboost", define_space("adaboost", {
                            categorical("algorithm", {"SAMME", "SAMME.R"}),
                            imputation(),
                            integer("n_estimators", 50, 500),
                            continuous_log("learning_rate", 0.01, 2.0),
                            integer("max_depth", 1, 10),
                        }));
  m.emplace("extra_trees", define_space("extra_trees", {
                               boolean("bootstrap"),
                               imputation(),
                               categorical("criterion", {"entropy", "gini"}),
                               continuous("max_features", 0.1, 0.9),
                               integer("min_samples_split", 2, 20),
                               integer("min_samples_leaf", 1, 20),
                           }));
  m.emplace("decision_tree", define_space("decision_tree", {
                                 imputation(),
                                 categorical("criterion", {"entropy", "gini"}),
                                 continuous("max_features", 0.1, 0.9),
                                 integer("min_samples_split", 2, 20),
                                 integer("min_samples_leaf", 1, 20),
                             }));
  m.emplace("gradient_boosting", define_space("gradient_boosting", {
                                     imputation(),
                                     continuous("learning_rate", 0.01, 0.99),
                                     categorical("criterion", {"friedman_mse", "mse"}),
                                     integer("n_estimators", 50, 500),
                                     integer("max_depth", 1, 10),
                                     integer("min_samples_split", 2, 20),
                                     integer("min_samples_leaf", 1, 20),
                                     continuous("max_features", 0.1, 0.9),
                                 }));
  return m;
}

const std::map<std::string, ConfigurationSpace>& builtins() {
  static const std::map<std::string, ConfigurationSpace> m = make_builtin_spaces();
  return m;
}

}  // namespace

std::vector<std::string> builtin_space_names() {
  std::vector<std::string> names;
  for (const auto& [name, _] : builtins()) names.push_back(name);
  return names;
}

bool has_builtin_space(const std::string& algorithm) { return builtins().count(algorithm) > 0; }

const ConfigurationSpace& builtin_space(const std::string& algorithm) {
  auto it = builtins().find(algorithm);
  if (it == builtins().end()) fail("no builtin space named '" + algorithm + "'");
  return it->second;
}

ConfigurationSpace space_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  std::vector<HyperparameterDomain> domains;
  for (const auto& dj : j.at("domains")) {
    HyperparameterDomain d;
    d.name = dj.at("name").get<std::string>();
    d.kind = kind_from_name(dj.at("kind").get<std::string>());
    if (kind_is_numeric(d.kind)) {
      d.lower = dj.at("lower").get<double>();
      d.upper = dj.at("upper").get<double>();
    } else if (dj.contains("categories")) {
      d.categories = dj.at("categories").get<std::vector<std::string>>();
    } else if (d.kind == DomainKind::Boolean) {
      d.categories = {"true", "false"};
    }
    domains.push_back(std::move(d));
  }
  return define_space(j.at("algorithm").get<std::string>(), std::move(domains));
}

std::string space_to_json(const ConfigurationSpace& space) {
  nlohmann::json j;
  j["algorithm"] = space.algorithm();
  j["domains"] = nlohmann::json::array();
  for (const auto& d : space.domains()) {
    nlohmann::json dj;
    dj["name"] = d.name;
    dj["kind"] = kind_name(d.kind);
    if (kind_is_numeric(d.kind)) {
      dj["lower"] = d.lower;
      dj["upper"] = d.upper;
    } else {
      dj["categories"] = d.categories;
    }
    j["domains"].push_back(std::move(dj));
  }
  return j.dump(2) + "\n";
}

ConfigurationSpace load_space_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open space file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return space_from_json(ss.str());
}

}  // namespace hyperimp
