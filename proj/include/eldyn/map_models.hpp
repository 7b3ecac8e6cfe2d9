#pragma once

#include <string>
#include <vector>

#include "eldyn/common.hpp"

namespace eldyn {

// Built-in entire-function families. A closed enumeration: the downstream
// geometry needs closed-form derivatives, singular values and logarithmic
// lifts, which arbitrary entire functions cannot supply.
enum class Family {
  ExpAffine,  // z -> lambda * (exp(z) - 1)
  ExpShift,   // z -> exp(z) + kappa
  Sine,       // z -> lambda * sin(z)
  Cosine,     // z -> a * exp(z) + b * exp(-z)
  ZExp,       // z -> z * exp(z)
  PetalExp,   // z -> ((z + 1) * exp(z) - 1) / 4
};

const char* family_name(Family f);
Family family_from_name(const std::string& name);

enum class SingularKind { Critical, Asymptotic };

struct SingularValue {
  cplx point;
  SingularKind kind;
};

struct SingularSet {
  std::vector<SingularValue> values;
};

// Immutable after construction; all operations are pure, so maps are safe to
// share across threads.
class EntireMap {
 public:
  // ExpAffine/Sine use `p` as lambda, ExpShift as kappa, Cosine as a with
  // second parameter b. ZExp/PetalExp are parameter-free.
  static EntireMap exp_affine(cplx lambda);
  static EntireMap exp_shift(cplx kappa);
  static EntireMap sine(cplx lambda);
  static EntireMap cosine(cplx a, cplx b);
  static EntireMap zexp();
  static EntireMap petal_exp();

  Family family() const { return family_; }
  cplx param() const { return p_; }
  cplx param2() const { return q_; }

  cplx evaluate(cplx z) const;
  cplx derivative(cplx z) const;
  SingularSet singular_values() const;
  double bound_K() const;

  // Plain-text descriptor, e.g. "family=expshift kappa=-2,0"; parseable by
  // from_descriptor for CLI round-tripping.
  std::string descriptor() const;
  static EntireMap from_descriptor(const std::string& text);

  static EntireMap make(Family f, cplx p, cplx q = cplx(1.0, 0.0));

 private:
  EntireMap(Family f, cplx p, cplx q);

  Family family_;
  cplx p_;
  cplx q_;
};

}  // namespace eldyn
