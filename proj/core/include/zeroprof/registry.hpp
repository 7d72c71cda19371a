#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "zeroprof/limitlaws.hpp"
#include "zeroprof/polynomial.hpp"
#include "zeroprof/profiles.hpp"
#include "zeroprof/roots.hpp"

namespace zeroprof::registry {

using Params = std::map<std::string, std::string>;

/**
 * Rational parameter that may scale with n: "3/2", "2n", "-2n", "n", "1/n", "3/n".
 * "log(r)" is accepted where a real value is allowed and evaluates log r.
 */
Rational parse_rule(const std::string& text, int n);
BigFloat parse_real_rule(const std::string& text, int n, mpfr_prec_t prec);
std::vector<Rational> parse_rule_list(const std::string& text, int n);  // ':'-separated

/// A generated family member with its rescale, matched limit law and profile recorded as metadata.
struct FamilyInstance {
  std::string family;
  int n = 0;
  Params params;  // as given, after defaults
  bool is_float = false;
  ExactPolynomial exact;
  FloatPolynomial floating;

  /// Normalizer of the empirical measure (n, or n m for flows).
  int normalizer = 0;
  /// Human-readable rescale, e.g. "x -> n x".
  std::string scaling;
  /// Roots of the generated polynomial are divided by this (negative values reflect).
  double root_divisor = 1.0;
  roots::RootMethod method = roots::RootMethod::automatic;
  /// False for the conjectural parameter ranges; outputs then carry the tag below.
  bool real_rooted_proved = true;
  std::string tag;

  std::string law;
  std::map<std::string, double> law_params;
  bool compactify = false;

  std::string profile;
  std::map<std::string, double> profile_params;
};

std::vector<std::string> family_names();
FamilyInstance build_family(const std::string& family, int n, const Params& params = {});

/// Generated roots with the recorded rescale applied, normalised by the instance normalizer.
roots::EmpiricalMeasure family_measure(const FamilyInstance& inst, int precision_bits = 60,
                                       roots::RootSet* raw = nullptr);
/// The limit law for family_measure, or null when the family has none.
limitlaws::LawPtr family_law(const FamilyInstance& inst);
/// Coefficients whose exponential profile is the instance's closed profile (the related
/// nonnegative polynomial for Hermite and the Jacobi group).
profiles::LogCoeffVector profile_coefficients(const FamilyInstance& inst);
std::optional<profiles::ClosedProfile> family_profile(const FamilyInstance& inst);

/// Law whose t G(t) inverts the closed profile's e^{-g'}: the zero law of the profile polynomial.
struct ProfileLaw {
  limitlaws::LawPtr law;
  /// t G_profile(t) = t * scale * G_law(shift + scale * t) (Jacobi group uses scale 2, shift 1).
  double scale = 1.0;
  double shift = 0.0;

  double tG(double t) const;
};

ProfileLaw profile_law(const std::string& profile, const std::map<std::string, double>& params);

struct TableRow {
  std::string name;
  std::string family;
  Params params;
  std::string profile;
  std::map<std::string, double> profile_params;
  std::string law;
  std::map<std::string, double> law_params;
  /// The documented command reproducing the profile comparison for the row.
  std::string command;
};

const std::vector<TableRow>& table1();

}  // namespace zeroprof::registry
