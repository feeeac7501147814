#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "oranopt/problem.hpp"
#include "oranopt/system_model.hpp"

namespace oranopt::solvers::detail {

// Continuous relaxation of the joint association / cipher selection
// problem. Each binary variable is exp() of a free log-domain variable
// kept within a bounded box below zero, so the relaxed value lives in (0, 1].
// The one-choice rules become sum-to-one equalities plus a pairwise-product
// cap that starves all but one candidate of mass.
class RelaxedProblem {
 public:
  RelaxedProblem(const model::Scenario& s, double alpha, double epsilon_pair)
      : s_(s), alpha_(alpha), eps_(epsilon_pair),
        I_(s.n_ues()), J_(s.n_orus()), T_(s.horizon()),
        G_(static_cast<int>(s.catalog().size())) {
    const auto& bounds = s.norm_bounds();
    sec_norm_.resize(G_);
    cycles_.resize(G_);
    for (int g = 0; g < G_; ++g) {
      sec_norm_[g] = s.catalog()[g].security_bits / bounds.security_max_bits;
      cycles_[g] = static_cast<double>(s.catalog()[g].enc_cycles_per_block);
    }
    tau_enc_.assign(static_cast<std::size_t>(I_) * T_ * G_, 0.0);
    energy_cp_.assign(tau_enc_.size(), 0.0);
    tau_cd_.assign(static_cast<std::size_t>(I_) * T_ * J_ * G_, 0.0);
    energy_cm_.assign(tau_cd_.size(), 0.0);
    l_max_.assign(static_cast<std::size_t>(I_) * T_, 0.0);
    for (int i = 0; i < I_; ++i) {
      for (int t = 0; t < T_; ++t) {
        l_max_[i * T_ + t] = bounds.latency_max_s(i, t);
        for (int g = 0; g < G_; ++g) {
          const auto& opt = s.catalog()[g];
          const std::int64_t pt = s.ue(i).payload_bits[t];
          const std::int64_t ct = model::ciphertext_bits(pt, opt);
          const double te = model::enc_latency_s(pt, opt, s.ue(i).clock_hz);
          tau_enc_[eg(i, t, g)] = te;
          energy_cp_[eg(i, t, g)] = te * s.e_cp_watts();
          for (int j = 0; j < J_; ++j) {
            const double tc = model::comm_latency_s(ct, s.rate_bps(i, j, t));
            const double td = model::dec_latency_s(ct, opt, s.oru(j).clock_hz);
            tau_cd_[ejg(i, t, j, g)] = tc + td;
            energy_cm_[ejg(i, t, j, g)] = tc * s.e_comm_watts();
          }
        }
      }
    }
  }

  int n_vars() const { return I_ * T_ * (J_ + G_); }
  int x_var(int i, int t, int j) const { return (i * T_ + t) * (J_ + G_) + j; }
  int a_var(int i, int t, int g) const { return (i * T_ + t) * (J_ + G_) + J_ + g; }

  // Penalized value and gradient. Terms are scaled by their natural
  // magnitudes so one penalty weight serves them all.
  double eval(const std::vector<double>& z, double mu,
              std::vector<double>* grad) const {
    const int n = n_vars();
    std::vector<double> ex(n);
    for (int k = 0; k < n; ++k) ex[k] = std::exp(z[k]);
    if (grad) grad->assign(n, 0.0);

    double p = 0.0;
    std::vector<double> cap_sum(static_cast<std::size_t>(J_) * T_, 0.0);
    std::vector<double> battery(I_, 0.0);

    for (int i = 0; i < I_; ++i) {
      for (int t = 0; t < T_; ++t) {
        double sum_x = 0.0, sum_x2 = 0.0;
        for (int j = 0; j < J_; ++j) {
          const double x = ex[x_var(i, t, j)];
          sum_x += x;
          sum_x2 += x * x;
          cap_sum[j * T_ + t] += x;
        }
        double sum_a = 0.0, sum_a2 = 0.0, sec = 0.0, cyc = 0.0;
        double lat_a = 0.0;  // option-only latency term
        for (int g = 0; g < G_; ++g) {
          const double a = ex[a_var(i, t, g)];
          sum_a += a;
          sum_a2 += a * a;
          sec += a * sec_norm_[g];
          cyc += a * cycles_[g];
          lat_a += a * tau_enc_[eg(i, t, g)];
          battery[i] += a * energy_cp_[eg(i, t, g)];
        }
        double lat_xa = 0.0;  // association * option latency term
        for (int j = 0; j < J_; ++j) {
          const double x = ex[x_var(i, t, j)];
          double inner = 0.0, inner_cm = 0.0;
          for (int g = 0; g < G_; ++g) {
            const double a = ex[a_var(i, t, g)];
            inner += a * tau_cd_[ejg(i, t, j, g)];
            inner_cm += a * energy_cm_[ejg(i, t, j, g)];
          }
          lat_xa += x * inner;
          battery[i] += x * inner_cm;
        }

        // Objective.
        const double lm = l_max_[i * T_ + t];
        p += (1.0 - alpha_) * (1.0 - sec);
        if (lm > 0.0) p += alpha_ * (lat_a + lat_xa) / lm;

        // One-association and one-cipher equalities.
        const double rx = sum_x - 1.0;
        const double ra = sum_a - 1.0;
        p += mu * (rx * rx + ra * ra);

        // Pairwise-product caps. The raw residual is already order one, so
        // it is not rescaled; dividing by the small cap would let this term
        // drown the objective before the weight ladder even starts.
        const double pair_x = 0.5 * (sum_x * sum_x - sum_x2);
        const double pair_a = 0.5 * (sum_a * sum_a - sum_a2);
        const double hx = std::max(0.0, pair_x - eps_);
        const double ha = std::max(0.0, pair_a - eps_);
        p += mu * (hx * hx + ha * ha);

        // Security requirement of the (fractional) association.
        double wx = 0.0;
        for (int j = 0; j < J_; ++j) {
          wx += ex[x_var(i, t, j)] * s_.oru(j).security_requirement_bits;
        }
        const double hs =
            std::max(0.0, (wx / s_.norm_bounds().security_max_bits) - sec);
        p += mu * hs * hs;

        // Per-block cycle budget.
        const double gamma = s_.ue(i).compute_budget_cycles;
        const double hc = std::max(0.0, cyc / gamma - 1.0);
        p += mu * hc * hc;

        if (grad) {
          for (int j = 0; j < J_; ++j) {
            const int k = x_var(i, t, j);
            const double x = ex[k];
            double d = 0.0;
            if (lm > 0.0) {
              double inner = 0.0;
              for (int g = 0; g < G_; ++g) {
                inner += ex[a_var(i, t, g)] * tau_cd_[ejg(i, t, j, g)];
              }
              d += alpha_ * inner / lm;
            }
            d += mu * 2.0 * rx;
            d += mu * 2.0 * hx * (sum_x - x);
            d += mu * 2.0 * hs * s_.oru(j).security_requirement_bits /
                 s_.norm_bounds().security_max_bits;
            (*grad)[k] += d * x;
          }
          for (int g = 0; g < G_; ++g) {
            const int k = a_var(i, t, g);
            const double a = ex[k];
            double d = -(1.0 - alpha_) * sec_norm_[g];
            if (lm > 0.0) {
              double inner = tau_enc_[eg(i, t, g)];
              for (int j = 0; j < J_; ++j) {
                inner += ex[x_var(i, t, j)] * tau_cd_[ejg(i, t, j, g)];
              }
              d += alpha_ * inner / lm;
            }
            d += mu * 2.0 * ra;
            d += mu * 2.0 * ha * (sum_a - a);
            d -= mu * 2.0 * hs * sec_norm_[g];
            d += mu * 2.0 * hc * cycles_[g] / gamma;
            (*grad)[k] += d * a;
          }
        }
      }
    }

    // Resource-block capacity per (radio unit, step).
    for (int j = 0; j < J_; ++j) {
      for (int t = 0; t < T_; ++t) {
        const double m = static_cast<double>(s_.oru(j).resource_blocks);
        const double hm = std::max(0.0, cap_sum[j * T_ + t] / m - 1.0);
        p += mu * hm * hm;
        if (grad && hm > 0.0) {
          for (int i = 0; i < I_; ++i) {
            const int k = x_var(i, t, j);
            (*grad)[k] += mu * 2.0 * hm / m * ex[k];
          }
        }
      }
    }

    // Battery over the horizon per device.
    for (int i = 0; i < I_; ++i) {
      const double cap = s_.ue(i).battery_joules;
      const double hb = std::max(0.0, battery[i] / cap - 1.0);
      p += mu * hb * hb;
      if (grad && hb > 0.0) {
        const double scale = mu * 2.0 * hb / cap;
        for (int t = 0; t < T_; ++t) {
          for (int g = 0; g < G_; ++g) {
            const int k = a_var(i, t, g);
            double d = energy_cp_[eg(i, t, g)];
            for (int j = 0; j < J_; ++j) {
              d += ex[x_var(i, t, j)] * energy_cm_[ejg(i, t, j, g)];
            }
            (*grad)[k] += scale * d * ex[k];
          }
          for (int j = 0; j < J_; ++j) {
            const int k = x_var(i, t, j);
            double d = 0.0;
            for (int g = 0; g < G_; ++g) {
              d += ex[a_var(i, t, g)] * energy_cm_[ejg(i, t, j, g)];
            }
            (*grad)[k] += scale * d * ex[k];
          }
        }
      }
    }
    return p;
  }

  // The relaxed objective alone, for trace reporting.
  double relaxed_objective(const std::vector<double>& z) const {
    return eval(z, 0.0, nullptr);
  }

  // Per-row argmax. With admissible_only set, the association argmax skips
  // radio units the device cannot serve at any cipher (requirement vs cycle
  // budget), so the follow-up repair never starts from a doomed cell.
  problem::Assignment round_argmax(const std::vector<double>& z,
                                   bool admissible_only) const {
    problem::Assignment a;
    a.oru_of = Grid2<int>(I_, T_);
    a.option_of = Grid2<int>(I_, T_);
    for (int i = 0; i < I_; ++i) {
      for (int t = 0; t < T_; ++t) {
        int bj = -1;
        for (int j = 0; j < J_; ++j) {
          if (admissible_only && !serveable(i, j)) continue;
          if (bj < 0 || z[x_var(i, t, j)] > z[x_var(i, t, bj)]) bj = j;
        }
        if (bj < 0) bj = 0;  // nothing admissible; let the caller see it fail
        int bg = 0;
        for (int g = 1; g < G_; ++g) {
          if (z[a_var(i, t, g)] > z[a_var(i, t, bg)]) bg = g;
        }
        a.oru_of(i, t) = bj;
        a.option_of(i, t) = bg;
      }
    }
    return a;
  }

  bool serveable(int i, int j) const {
    for (int g = 0; g < G_; ++g) {
      if (s_.catalog()[g].security_bits >= s_.oru(j).security_requirement_bits &&
          static_cast<double>(s_.catalog()[g].enc_cycles_per_block) <=
              s_.ue(i).compute_budget_cycles) {
        return true;
      }
    }
    return false;
  }

 private:
  std::size_t eg(int i, int t, int g) const {
    return (static_cast<std::size_t>(i) * T_ + t) * G_ + g;
  }
  std::size_t ejg(int i, int t, int j, int g) const {
    return ((static_cast<std::size_t>(i) * T_ + t) * J_ + j) * G_ + g;
  }

  const model::Scenario& s_;
  double alpha_;
  double eps_;
  int I_, J_, T_, G_;
  std::vector<double> sec_norm_, cycles_;
  std::vector<double> tau_enc_, energy_cp_;  // [i][t][g]
  std::vector<double> tau_cd_, energy_cm_;   // [i][t][j][g]
  std::vector<double> l_max_;                // [i][t]
};


}  // namespace oranopt::solvers::detail
