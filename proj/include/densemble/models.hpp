#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "densemble/density.hpp"
#include "densemble/errors.hpp"
#include "densemble/kernels.hpp"
#include "densemble/rng.hpp"
#include "densemble/sample.hpp"

namespace densemble {

// The eleven benchmark distributions, from easy unimodal shapes to mixtures
// with highly inhomogeneous smoothness.
enum class Model {
  m1,   // standard normal
  m2,   // standard exponential
  m3,   // chi-square, 10 df
  m4,   // Student t, 4 df
  m5,   // 0.5 N(-1,0.3) + 0.5 N(1,0.3)
  m6,   // 0.5 N(-2.5,1) + 0.5 N(2.5,1)
  m7,   // 0.25 N(-3,0.5) + 0.5 N(0,1) + 0.25 N(3,0.5)
  m8,   // claw
  m9,   // smooth comb
  m10,  // half normal, half 10-interval uniform comb
  m11,  // half normal, half 14-interval uniform comb
};

inline constexpr std::array<Model, 11> all_models() {
  return {Model::m1, Model::m2, Model::m3, Model::m4,  Model::m5, Model::m6,
          Model::m7, Model::m8, Model::m9, Model::m10, Model::m11};
}

inline const char* model_name(Model m) {
  static constexpr const char* names[] = {"M1", "M2", "M3", "M4",  "M5", "M6",
                                          "M7", "M8", "M9", "M10", "M11"};
  return names[static_cast<int>(m)];
}

inline Model parse_model(const std::string& name) {
  for (Model m : all_models())
    if (name == model_name(m)) return m;
  throw config_error("unknown model: " + name);
}

inline double normal_pdf(double x, double mean, double sd) {
  const double z = (x - mean) / sd;
  return inv_sqrt_2pi * std::exp(-0.5 * z * z) / sd;
}

// Finite Gaussian mixture; the scale parameters are standard deviations.
struct GaussianMixture {
  std::vector<double> weights;
  std::vector<double> means;
  std::vector<double> sds;

  double pdf(double x) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i)
      acc += weights[i] * normal_pdf(x, means[i], sds[i]);
    return acc;
  }

  double draw(Rng& rng) const {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const double u = unif(rng);
    double cum = 0.0;
    std::size_t pick = weights.size() - 1;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      cum += weights[i];
      if (u <= cum) {
        pick = i;
        break;
      }
    }
    std::normal_distribution<double> normal(means[pick], sds[pick]);
    return normal(rng);
  }
};

inline GaussianMixture claw_mixture() {
  GaussianMixture mix;
  mix.weights = {0.5, 0.1, 0.1, 0.1, 0.1, 0.1};
  mix.means = {0.0, -1.0, -0.5, 0.0, 0.5, 1.0};
  mix.sds = {1.0, 0.1, 0.1, 0.1, 0.1, 0.1};
  return mix;
}

// Six components with weights 2^(5-i)/63, means (65 - 96/2^i)/21 and
// standard deviations (32/63)/2^i, for i = 0..5.
inline GaussianMixture smooth_comb_mixture() {
  GaussianMixture mix;
  for (int i = 0; i <= 5; ++i) {
    const double pow2 = std::pow(2.0, i);
    mix.weights.push_back(std::pow(2.0, 5 - i) / 63.0);
    mix.means.push_back((65.0 - 96.0 / pow2) / 21.0);
    mix.sds.push_back((32.0 / 63.0) / pow2);
  }
  return mix;
}

inline GaussianMixture two_bump_mixture(double center, double sd) {
  return GaussianMixture{{0.5, 0.5}, {-center, center}, {sd, sd}};
}

inline GaussianMixture trimodal_mixture() {
  return GaussianMixture{{0.25, 0.5, 0.25}, {-3.0, 0.0, 3.0}, {0.5, 1.0, 0.5}};
}

namespace detail {

// Half standard normal plus a comb of `count` unit-height uniform intervals
// ((2(i-1))/T, (2i-1)/T] with T = count, so the comb carries total mass one.
struct NormalUniformComb {
  int count;

  double pdf(double x) const {
    const double t = static_cast<double>(count);
    double comb = 0.0;
    const double scaled = x * t;
    if (scaled > 0.0) {
      const int k = static_cast<int>(scaled / 2.0);
      if (k < count && x > 2.0 * k / t && x <= (2.0 * k + 1.0) / t) comb = 1.0;
    }
    return 0.5 * normal_pdf(x, 0.0, 1.0) + 0.5 * comb;
  }

  double draw(Rng& rng) const {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    if (unif(rng) < 0.5) {
      std::normal_distribution<double> normal(0.0, 1.0);
      return normal(rng);
    }
    std::uniform_int_distribution<int> pick(0, count - 1);
    const int k = pick(rng);
    const double t = static_cast<double>(count);
    std::uniform_real_distribution<double> inside(2.0 * k / t, (2.0 * k + 1.0) / t);
    return inside(rng);
  }
};

inline double chisq10_pdf(double x) {
  if (x < 0.0) return 0.0;
  return x * x * x * x * std::exp(-0.5 * x) / 768.0;
}

inline double student_t4_pdf(double x) {
  return 0.375 * std::pow(1.0 + 0.25 * x * x, -2.5);
}

inline double squared_normal_sum(int terms, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  double acc = 0.0;
  for (int i = 0; i < terms; ++i) {
    const double z = normal(rng);
    acc += z * z;
  }
  return acc;
}

}  // namespace detail

// Exact density of a benchmark model at a point.
inline double model_density(Model m, double x) {
  switch (m) {
    case Model::m1:
      return normal_pdf(x, 0.0, 1.0);
    case Model::m2:
      return x < 0.0 ? 0.0 : std::exp(-x);
    case Model::m3:
      return detail::chisq10_pdf(x);
    case Model::m4:
      return detail::student_t4_pdf(x);
    case Model::m5: {
      static const GaussianMixture mix = two_bump_mixture(1.0, 0.3);
      return mix.pdf(x);
    }
    case Model::m6: {
      static const GaussianMixture mix = two_bump_mixture(2.5, 1.0);
      return mix.pdf(x);
    }
    case Model::m7: {
      static const GaussianMixture mix = trimodal_mixture();
      return mix.pdf(x);
    }
    case Model::m8: {
      static const GaussianMixture mix = claw_mixture();
      return mix.pdf(x);
    }
    case Model::m9: {
      static const GaussianMixture mix = smooth_comb_mixture();
      return mix.pdf(x);
    }
    case Model::m10:
      return detail::NormalUniformComb{10}.pdf(x);
    case Model::m11:
      return detail::NormalUniformComb{14}.pdf(x);
  }
  return 0.0;
}

// Integration range capturing all but < 1e-5 of the model's mass.
inline Support model_domain(Model m) {
  switch (m) {
    case Model::m1:
      return {-5.0, 5.0};
    case Model::m2:
      return {0.0, 15.0};
    case Model::m3:
      return {0.0, 45.0};
    case Model::m4:
      return {-30.0, 30.0};
    case Model::m5:
      return {-3.0, 3.0};
    case Model::m6:
      return {-7.0, 7.0};
    case Model::m7:
      return {-6.0, 6.0};
    case Model::m8:
      return {-5.0, 5.0};
    case Model::m9:
      return {-4.0, 5.0};
    case Model::m10:
    case Model::m11:
      return {-5.0, 5.0};
  }
  return {-5.0, 5.0};
}

// n i.i.d. draws. Chi-square and t variates are composed from normals, so no
// special functions are needed anywhere in the samplers.
inline Sample model_sample(Model m, std::size_t n, Rng& rng) {
  if (n < 2) throw config_error("need at least two draws");
  Sample out(n);
  switch (m) {
    case Model::m1: {
      std::normal_distribution<double> normal(0.0, 1.0);
      for (double& v : out) v = normal(rng);
      break;
    }
    case Model::m2: {
      std::exponential_distribution<double> exponential(1.0);
      for (double& v : out) v = exponential(rng);
      break;
    }
    case Model::m3: {
      for (double& v : out) v = detail::squared_normal_sum(10, rng);
      break;
    }
    case Model::m4: {
      std::normal_distribution<double> normal(0.0, 1.0);
      for (double& v : out) {
        const double z = normal(rng);
        const double chi4 = detail::squared_normal_sum(4, rng);
        v = z / std::sqrt(chi4 / 4.0);
      }
      break;
    }
    case Model::m5:
    case Model::m6:
    case Model::m7:
    case Model::m8:
    case Model::m9: {
      static const GaussianMixture m5mix = two_bump_mixture(1.0, 0.3);
      static const GaussianMixture m6mix = two_bump_mixture(2.5, 1.0);
      static const GaussianMixture m7mix = trimodal_mixture();
      static const GaussianMixture m8mix = claw_mixture();
      static const GaussianMixture m9mix = smooth_comb_mixture();
      const GaussianMixture* mix = &m5mix;
      if (m == Model::m6) mix = &m6mix;
      if (m == Model::m7) mix = &m7mix;
      if (m == Model::m8) mix = &m8mix;
      if (m == Model::m9) mix = &m9mix;
      for (double& v : out) v = mix->draw(rng);
      break;
    }
    case Model::m10: {
      const detail::NormalUniformComb comb{10};
      for (double& v : out) v = comb.draw(rng);
      break;
    }
    case Model::m11: {
      const detail::NormalUniformComb comb{14};
      for (double& v : out) v = comb.draw(rng);
      break;
    }
  }
  return out;
}

// The exact model density wrapped as a Density over its integration domain.
inline Density model_density_as_density(Model m) {
  return make_density([m](double x) { return model_density(m, x); },
                      model_domain(m));
}

}  // namespace densemble
