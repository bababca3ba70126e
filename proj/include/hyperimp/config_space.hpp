#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

namespace hyperimp {

enum class DomainKind { Continuous, ContinuousLog, Integer, Categorical, Boolean };

bool kind_is_numeric(DomainKind k);
bool kind_is_categorical(DomainKind k);
const char* kind_name(DomainKind k);
DomainKind kind_from_name(const std::string& name);

/// One hyperparameter domain. Numeric kinds use [lower, upper]; categorical
/// kinds use the ordered label list.
struct HyperparameterDomain {
  std::string name;
  DomainKind kind = DomainKind::Continuous;
  double lower = 0.0;
  double upper = 0.0;
  std::vector<std::string> categories;

  int category_count() const { return static_cast<int>(categories.size()); }
  void validate() const;  // throws std::invalid_argument on a violated invariant
};

/// A hyperparameter value: a number for continuous/log/integer kinds, a
/// category label otherwise.
using ParamValue = std::variant<double, std::string>;

bool param_value_equal(const ParamValue& a, const ParamValue& b);

/// One point of a configuration space, values in domain order.
struct Configuration {
  std::vector<ParamValue> values;
};

/// Sorted set of domain positions identifying a subset of hyperparameters.
struct HyperparameterSubset {
  std::vector<int> indices;  // strictly increasing
};

/// The typed product domain of one algorithm's hyperparameters. Immutable
/// after construction; safe to share across threads.
///
/// Every value has an internal representation on which sampling is uniform:
/// continuous and integer kinds map affinely to [0,1], continuous-log maps
/// the log of the value to [0,1], categorical kinds map to the category
/// index. Trees, fANOVA integration and KDE all operate on internal
/// coordinates.
class ConfigurationSpace {
 public:
  ConfigurationSpace() = default;
  ConfigurationSpace(std::string algorithm, std::vector<HyperparameterDomain> domains);

  const std::string& algorithm() const { return algorithm_; }
  int dimension() const { return static_cast<int>(domains_.size()); }
  const std::vector<HyperparameterDomain>& domains() const { return domains_; }
  const HyperparameterDomain& domain(int i) const { return domains_.at(static_cast<std::size_t>(i)); }
  /// Position of a domain by name, -1 when absent.
  int index_of(const std::string& name) const;

  /// Throws std::invalid_argument when the value lies outside the domain.
  void check_value(int dim, const ParamValue& v) const;
  void check_configuration(const Configuration& c) const;

  double value_to_internal(int dim, const ParamValue& v) const;
  ParamValue value_from_internal(int dim, double x) const;
  std::vector<double> to_internal(const Configuration& c) const;
  Configuration from_internal(const std::vector<double>& x) const;

  /// Independent uniform sampling per domain (log-uniform for continuous-log
  /// kinds). Deterministic given the seed.
  std::vector<Configuration> sample_uniform(int count, std::uint64_t seed) const;

 private:
  std::string algorithm_;
  std::vector<HyperparameterDomain> domains_;
  std::map<std::string, int> index_;
};

ConfigurationSpace define_space(std::string algorithm, std::vector<HyperparameterDomain> domains);

/// Names of the bundled spaces for the six studied classifiers.
std::vector<std::string> builtin_space_names();
bool has_builtin_space(const std::string& algorithm);
const ConfigurationSpace& builtin_space(const std::string& algorithm);

/// JSON document {algorithm, domains:[{name, kind, lower, upper, categories}]}.
ConfigurationSpace space_from_json(const std::string& text);
std::string space_to_json(const ConfigurationSpace& space);
ConfigurationSpace load_space_file(const std::string& path);

}  // namespace hyperimp
