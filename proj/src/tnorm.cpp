#include "pmet/tnorm.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "pmet/common.hpp"

namespace pmet {

std::string to_string(Archetype a) {
  return a == Archetype::product ? "product" : "lukasiewicz";
}

OrdinalSumTNorm::OrdinalSumTNorm(std::vector<OrdinalInterval> intervals)
    : intervals_(std::move(intervals)) {
  double prev_end = 0.0;
  for (const auto& iv : intervals_) {
    require_unit(iv.a, "interval endpoint");
    require_unit(iv.b, "interval endpoint");
    if (!(iv.a < iv.b)) {
      throw std::invalid_argument("interval endpoints must satisfy a < b, got [" +
                                  fmt_real(iv.a) + "," + fmt_real(iv.b) + "]");
    }
    if (iv.a < prev_end) {
      throw std::invalid_argument("intervals overlap near " + fmt_real(iv.a));
    }
    prev_end = iv.b;
  }
}

OrdinalSumTNorm OrdinalSumTNorm::minimum() { return OrdinalSumTNorm{}; }

OrdinalSumTNorm OrdinalSumTNorm::product() {
  return OrdinalSumTNorm{{{0.0, 1.0, Archetype::product}}};
}

OrdinalSumTNorm OrdinalSumTNorm::lukasiewicz() {
  return OrdinalSumTNorm{{{0.0, 1.0, Archetype::lukasiewicz}}};
}

int OrdinalSumTNorm::interior_interval(double q) const {
  for (std::size_t i = 0; i < intervals_.size(); ++i) {
    if (intervals_[i].a < q && q < intervals_[i].b) return static_cast<int>(i);
    if (q <= intervals_[i].a) break;  // intervals are sorted
  }
  return -1;
}

double OrdinalSumTNorm::apply(double p, double q) const {
  require_unit(p, "t-norm operand");
  require_unit(q, "t-norm operand");
  const int ip = interior_interval(p);
  if (ip < 0) return std::min(p, q);  // p idempotent: absorption, bit-exact
  const int iq = interior_interval(q);
  if (iq != ip) return std::min(p, q);
  const auto& iv = intervals_[ip];
  double r;
  if (iv.archetype == Archetype::product) {
    // The rescaled coordinates are multiplied first so the rounding is
    // symmetric in p and q.
    const double w = iv.b - iv.a;
    r = iv.a + w * (((p - iv.a) / w) * ((q - iv.a) / w));
  } else {
    r = std::max(iv.a, p + q - iv.b);
  }
  // Domination by min is exact in the reals; keep it exact under rounding.
  return std::min(r, std::min(p, q));
}

bool OrdinalSumTNorm::is_idempotent(double q) const {
  require_unit(q, "t-norm operand");
  return interior_interval(q) < 0;
}

double OrdinalSumTNorm::idempotent_floor(double q) const {
  require_unit(q, "t-norm operand");
  const int i = interior_interval(q);
  return i < 0 ? q : intervals_[i].a;
}

double OrdinalSumTNorm::sup_idempotents_below_one() const {
  if (!intervals_.empty() && intervals_.back().b == 1.0) {
    return intervals_.back().a;
  }
  return 1.0;
}

std::string OrdinalSumTNorm::describe() const {
  if (intervals_.empty()) return "min";
  if (intervals_.size() == 1 && intervals_[0].a == 0.0 &&
      intervals_[0].b == 1.0) {
    return to_string(intervals_[0].archetype);
  }
  std::string out = "ordinal-sum[";
  for (std::size_t i = 0; i < intervals_.size(); ++i) {
    if (i) out += ",";
    out += "(" + fmt_real(intervals_[i].a) + "," + fmt_real(intervals_[i].b) +
           "," + to_string(intervals_[i].archetype) + ")";
  }
  return out + "]";
}

AffineTransport::AffineTransport(const OrdinalInterval& tail) : a_(tail.a) {
  if (tail.b != 1.0) {
    throw std::invalid_argument(
        "affine transport requires an interval reaching 1, got b = " +
        fmt_real(tail.b));
  }
  require_unit(tail.a, "interval endpoint");
}

double AffineTransport::forward(double x) const { return (x - a_) / (1.0 - a_); }

double AffineTransport::backward(double y) const { return y + a_ * (1.0 - y); }

namespace {

std::vector<double> unit_grid(int n) {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = static_cast<double>(i) / (n - 1);
  return g;
}

double uniform_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

AxiomReport verify_tnorm(const OrdinalSumTNorm& t,
                         const TnormVerifyOptions& opt) {
  AxiomReport report;
  report.subject = "t-norm " + t.describe();

  const auto pair = unit_grid(opt.pair_grid);
  const auto triple = unit_grid(opt.triple_grid);
  const auto fine = unit_grid(opt.floor_grid);

  {
    CheckResult c{"commutative", Verdict::pass, "exact", ""};
    for (double p : pair) {
      for (double q : pair) {
        if (t.apply(p, q) != t.apply(q, p)) {
          c.verdict = Verdict::fail;
          c.witness = "p=" + fmt_real(p) + " q=" + fmt_real(q);
          break;
        }
      }
      if (c.verdict == Verdict::fail) break;
    }
    report.checks.push_back(std::move(c));
  }

  {
    CheckResult c{"associative", Verdict::pass,
                  "grid, tol " + fmt_real(opt.assoc_tol), ""};
    for (double p : triple) {
      for (double q : triple) {
        const double pq = t.apply(p, q);
        for (double r : triple) {
          const double lhs = t.apply(pq, r);
          const double rhs = t.apply(p, t.apply(q, r));
          if (std::abs(lhs - rhs) > opt.assoc_tol) {
            c.verdict = Verdict::fail;
            c.witness = "p=" + fmt_real(p) + " q=" + fmt_real(q) +
                        " r=" + fmt_real(r) + " gap=" + fmt_real(lhs - rhs);
          }
        }
      }
    }
    report.checks.push_back(std::move(c));
  }

  {
    CheckResult c{"unit", Verdict::pass, "exact", ""};
    for (double q : fine) {
      if (t.apply(1.0, q) != q || t.apply(q, 1.0) != q) {
        c.verdict = Verdict::fail;
        c.witness = "q=" + fmt_real(q);
        break;
      }
    }
    report.checks.push_back(std::move(c));
  }

  {
    CheckResult c{"monotone", Verdict::pass,
                  "sampled, tol " + fmt_real(opt.monotone_tol), ""};
    std::mt19937_64 rng(opt.seed);
    for (int i = 0; i < 5000; ++i) {
      double p = uniform_unit(rng), p2 = uniform_unit(rng);
      double q = uniform_unit(rng), q2 = uniform_unit(rng);
      if (p > p2) std::swap(p, p2);
      if (q > q2) std::swap(q, q2);
      if (t.apply(p, q) > t.apply(p2, q2) + opt.monotone_tol) {
        c.verdict = Verdict::fail;
        c.witness = "p=" + fmt_real(p) + "<=" + fmt_real(p2) +
                    " q=" + fmt_real(q) + "<=" + fmt_real(q2);
        break;
      }
    }
    report.checks.push_back(std::move(c));
  }

  {
    CheckResult c{"dominated-by-min", Verdict::pass, "exact", ""};
    for (double p : pair) {
      for (double q : pair) {
        if (t.apply(p, q) > std::min(p, q)) {
          c.verdict = Verdict::fail;
          c.witness = "p=" + fmt_real(p) + " q=" + fmt_real(q);
        }
      }
    }
    report.checks.push_back(std::move(c));
  }

  {
    // Idempotent elements absorb: q*q = q forces p*q = min(p,q) for all p.
    CheckResult c{"idempotent-absorption", Verdict::pass, "exact", ""};
    std::vector<double> idems;
    for (double q : fine) {
      if (t.is_idempotent(q)) idems.push_back(q);
    }
    for (const auto& iv : t.intervals()) {
      idems.push_back(iv.a);
      idems.push_back(iv.b);
    }
    for (double q : idems) {
      for (double p : fine) {
        if (t.apply(p, q) != std::min(p, q)) {
          c.verdict = Verdict::fail;
          c.witness = "p=" + fmt_real(p) + " idempotent q=" + fmt_real(q);
        }
      }
    }
    report.checks.push_back(std::move(c));
  }

  {
    // The idempotent floor is a lattice map: (p*q)^floor = min of floors.
    CheckResult c{"floor-lattice", Verdict::pass, "exact", ""};
    for (double p : fine) {
      for (double q : fine) {
        const double lhs = t.idempotent_floor(t.apply(p, q));
        const double rhs =
            std::min(t.idempotent_floor(p), t.idempotent_floor(q));
        if (lhs != rhs) {
          c.verdict = Verdict::fail;
          c.witness = "p=" + fmt_real(p) + " q=" + fmt_real(q) +
                      " lhs=" + fmt_real(lhs) + " rhs=" + fmt_real(rhs);
        }
      }
    }
    report.checks.push_back(std::move(c));
  }

  {
    // The sup of idempotents below 1 is idempotent, and nothing strictly
    // between it and 1 is.
    CheckResult c{"idempotent-sup", Verdict::pass, "exact", ""};
    const double k = t.sup_idempotents_below_one();
    if (!t.is_idempotent(k)) {
      c.verdict = Verdict::fail;
      c.witness = "sup " + fmt_real(k) + " not idempotent";
    } else if (k < 1.0) {
      for (int i = 1; i < 64; ++i) {
        const double q = k + (1.0 - k) * i / 64.0;
        if (q < 1.0 && t.is_idempotent(q)) {
          c.verdict = Verdict::fail;
          c.witness = "idempotent " + fmt_real(q) + " above sup " + fmt_real(k);
          break;
        }
      }
    }
    report.checks.push_back(std::move(c));
  }

  {
    // is_idempotent agrees with direct evaluation on the grid.
    CheckResult c{"idempotent-eval-agreement", Verdict::pass, "exact", ""};
    for (double q : fine) {
      if (t.is_idempotent(q) != (t.apply(q, q) == q)) {
        c.verdict = Verdict::fail;
        c.witness = "q=" + fmt_real(q);
        break;
      }
    }
    report.checks.push_back(std::move(c));
  }

  return report;
}

}  // namespace pmet
