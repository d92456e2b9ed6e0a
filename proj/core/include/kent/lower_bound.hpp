#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "kent/codes.hpp"
#include "kent/flux.hpp"
#include "kent/pwc.hpp"

namespace kent {

enum class SlopeSide { DvLeq, DvGeq };
enum class SignClass { NonNegative, NonPositive };

/// Functions supported in [-L/2, L/2] with |v| <= h, the given sign and a
/// one-sided bound on Dv in the sense of measures.
struct OneSidedClassSpec {
  double L = 0.0;
  double h = 0.0;
  double bound = 0.0;
  SlopeSide side = SlopeSide::DvLeq;
  SignClass sign = SignClass::NonNegative;

  /// Membership for step functions. The measure bound is checked on cell
  /// pairs i < j as v_j - v_i <= b (left_j - right_i) + step (mirrored for
  /// DvGeq), so staircases with rises <= step pass.
  bool contains(const PiecewiseConstantFn& v, double step = 0.0) const;
  /// Empty when v is a member, else the first failed condition.
  std::string violation(const PiecewiseConstantFn& v, double step = 0.0) const;
};

struct BConstants {
  double b_plus;
  double b_minus;
};

/// b+ = 1 / (2T max_[0,h] |f''|), b- = 1 / (2T max_[-h,0] |f''|).
BConstants b_constants(const FluxModel& flux, double h, double T);

/// The class A+ (positive = true) or A- for the sign of f''(h) resp. f''(-h).
OneSidedClassSpec controllable_class(const FluxModel& flux, double L, double h, double T, bool positive);

/// max |f'| over [-h, h] <= L / (2T).
bool controllable_height(const FluxModel& flux, double L, double h, double T);

/// Initial datum u0 with S_T u0 = v: u0(x) = (S_T w0)(-x) for w0(x) = v(-x).
/// 'step' is the staircase resolution used in the membership check.
PiecewiseConstantFn backward_construct(const FluxModel& flux, const PiecewiseConstantFn& v,
                                       const OneSidedClassSpec& cls, double T, double delta, double step = 0.0);

struct RegularityReport {
  bool passed = true;
  double max_jump = 0.0;
  double worst_slack = 0.0;  ///< smallest slack of the difference quotient bound
  std::vector<std::string> violations;
};

/// Evolves u0 to T/4, T/2 and T and checks that no front jump exceeds
/// 3 delta and that sign(f''(+-h)) (u(x2+) - u(x1-)) >= -(x2 - x1) / (T max |f''|)
/// up to a state step 'delta' plus tol.
RegularityReport verify_regularity(const FluxModel& flux, const PiecewiseConstantFn& u0, double h, double T,
                                   double delta, double tol = 1e-6);

struct WitnessOptions {
  double delta = 1e-3;        ///< staircase step of the ramps
  double height_factor = 24;  ///< h = height_factor * eps / L
  int n_cells = 0;            ///< 0 selects the count maximizing the family size
  int max_cells = 8192;
  int class_sign = 0;         ///< +1 for A+, -1 for A-, 0 picks the larger b
};

struct WitnessFamilySpec {
  double L = 0.0;
  double T = 0.0;
  double eps = 0.0;
  double h = 0.0;
  double delta = 0.0;
  int n_cells = 0;
  double cell_width = 0.0;
  double tooth_slope = 0.0;
  double tooth_height = 0.0;
  int ramp_steps = 0;
  double tooth_area = 0.0;
  int required_distance = 0;  ///< Hamming distance giving L1 distance > 2 eps
  std::string code;
  int code_length = 0;
  int code_distance = 0;
  double log2_size = 0.0;
  OneSidedClassSpec cls;
};

/// Sawtooth witnesses: one tooth per cell of width L / n_cells on
/// [-L/2, L/2], present where the codeword has a 1. Teeth rise (or fall) at
/// slope b as a staircase and return to zero by a jump in the permitted
/// direction, so distinct members differ by tooth_area times their Hamming
/// distance in L1.
class WitnessFamily {
 public:
  WitnessFamily(WitnessFamilySpec spec, std::unique_ptr<BinaryCode> code);

  const WitnessFamilySpec& spec() const { return spec_; }
  const BinaryCode& code() const { return *code_; }
  double log2_size() const { return spec_.log2_size; }

  PiecewiseConstantFn realize(const std::vector<std::uint8_t>& bits) const;
  PiecewiseConstantFn member(std::uint64_t index) const;
  PiecewiseConstantFn random_member(std::mt19937_64& rng) const;
  std::vector<std::uint8_t> codeword(std::uint64_t index) const;

  /// Exhaustive pairwise check for families with at most max_pairs pairs,
  /// otherwise 'samples' random pairs plus pairs differing in one message
  /// digit. Returns the smallest L1 distance seen.
  double min_sampled_distance(std::size_t samples, std::uint64_t seed, std::size_t max_pairs = 2000) const;

 private:
  WitnessFamilySpec spec_;
  std::unique_ptr<BinaryCode> code_;
};

/// Exact area of one tooth.
double tooth_area(double width, double height, double slope, int steps);

/// Throws ParamError if h violates the controllability bound or exceeds M.
WitnessFamily build_witness_family(const FluxModel& flux, double L, double T, double eps,
                                   WitnessOptions options = {});

/// Convex kinds: L^2 / (108 ln2 T eps min(max_[0,6eps/L] f'', max_[-6eps/L,0] f'')).
/// Single-inflection: L^(m+1) / (108 ln2 6^(m-1) alpha_bar T eps^m).
/// Throws ParamError if max_{|z| <= 6 eps / L} |f'| > L / (2T).
double analytic_lower_bound(const FluxModel& flux, double L, double T, double eps, const FluxConstants& constants);

/// True if eps satisfies the precondition of analytic_lower_bound().
bool lower_bound_applies(const FluxModel& flux, double L, double T, double eps);

}  // namespace kent
