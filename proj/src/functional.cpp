#include "plap/functional.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "plap/cheeger.hpp"
#include "plap/errors.hpp"
#include "plap/geometry.hpp"

namespace plap {

namespace {

double domain_inradius(const Domain& dom) {
  if (const auto* poly = std::get_if<PolygonDomain>(&dom))
    return inradius(poly->poly);
  if (const auto* rect = std::get_if<RectangleDomain>(&dom))
    return 0.5 * std::min(rect->w, rect->h);
  if (const auto* ball = std::get_if<BallDomain>(&dom)) return ball->radius;
  if (const auto* ann = std::get_if<AnnulusDomain>(&dom))
    return 0.5 * (ann->outer - ann->inner);
  if (const auto* perf = std::get_if<PerforatedSquare>(&dom))
    return perforated_inradius(*perf);
  throw config_error("inradius: unsupported domain kind " + domain_name(dom));
}

bool convex_kind(const Domain& dom) {
  return std::holds_alternative<PolygonDomain>(dom) ||
         std::holds_alternative<RectangleDomain>(dom) ||
         std::holds_alternative<BallDomain>(dom);
}

int ambient_dim(const Domain& dom) {
  if (const auto* ball = std::get_if<BallDomain>(&dom)) return ball->dim;
  if (const auto* ann = std::get_if<AnnulusDomain>(&dom)) return ann->dim;
  return 2;
}

double rel_error(const ScaleResult& s) {
  return s.value > 0.0 ? s.error / s.value : 0.0;
}

}  // namespace

ScaleResult lambda_scale(const Domain& dom, const Exponent& p,
                         const SolverConfig& cfg) {
  ScaleResult res;
  res.p = p;

  if (p.is_one()) {
    const double tol = 1e-10;
    const CheegerResult ch = cheeger_extended(dom, tol, cfg);
    res.value = ch.h;
    if (const auto* br = std::get_if<BoundsOnly>(&ch.method)) {
      res.error = br->upper - br->lower;
      res.method = "cheeger-bracket";
    } else if (std::holds_alternative<BallFormula>(ch.method)) {
      res.error = 0.0;
      res.method = "closed-form";
    } else {
      // bisection tol sits on the radius; h = 1/r maps it through r^-2
      res.error = tol * ch.h * ch.h;
      res.method = "cheeger";
    }
    return res;
  }

  if (p.is_infinity()) {
    res.value = 1.0 / domain_inradius(dom);
    res.error = 0.0;
    res.method = "inradius";
    return res;
  }

  const double pv = p.value();
  EigenEstimate est;
  if (const auto* ball = std::get_if<BallDomain>(&dom)) {
    est = eigen_radial(*ball, pv, cfg);
    res.method = "radial";
  } else if (std::holds_alternative<AnnulusDomain>(dom)) {
    // the radial annulus backend solves the mixed cell problem, not the
    // Dirichlet domain eigenvalue, so it cannot serve this leg
    throw config_error(
        "lambda_scale: no Dirichlet eigensolver for annulus domains");
  } else {
    est = eigen_2d(dom, pv, cfg);
    res.method = "fem";
  }
  if (!est.converged)
    throw solver_error("lambda_scale: eigensolver failed on " +
                       domain_name(dom) + " at p = " + p.str() +
                       (est.message.empty() ? "" : ": " + est.message));
  const double lam = est.extrapolated;
  if (!(lam > 0.0))
    throw solver_error("lambda_scale: nonpositive eigenvalue estimate on " +
                       domain_name(dom) + " at p = " + p.str());
  res.value = std::pow(lam, 1.0 / pv);
  // dLambda = Lambda/(p lambda) dlambda
  res.error = res.value / (pv * lam) * est.error_indicator;
  return res;
}

RatioResult ratio(const Domain& dom, const Exponent& p, const Exponent& q,
                  const SolverConfig& cfg) {
  if (!(q < p))
    throw config_error("ratio: requires q < p, got q = " + q.str() +
                       ", p = " + p.str());
  const ScaleResult sp = lambda_scale(dom, p, cfg);
  const ScaleResult sq = lambda_scale(dom, q, cfg);
  RatioResult r;
  r.p = p;
  r.q = q;
  r.lambda_p_scale = sp.value;
  r.lambda_q_scale = sq.value;
  r.ratio = sp.value / sq.value;
  r.provenance = sp.method + "/" + sq.method;
  r.error_indicator = r.ratio * std::hypot(rel_error(sp), rel_error(sq));
  return r;
}

std::vector<BoundReport> inequality_suite(const Domain& dom,
                                          const std::vector<Exponent>& ps,
                                          const SolverConfig& cfg) {
  std::vector<Exponent> es(ps);
  std::sort(es.begin(), es.end());
  es.erase(std::unique(es.begin(), es.end()), es.end());

  const bool convex = convex_kind(dom);
  const int d = ambient_dim(dom);

  // each leg is evaluated at most once; a leg whose backend throws marks
  // every report that needs it Skipped with the reason
  struct Leg {
    ScaleResult s;
    bool ok = false;
    std::string why;
  };
  std::map<Exponent, Leg> cache;
  auto leg = [&](const Exponent& e) -> const Leg& {
    auto it = cache.find(e);
    if (it == cache.end()) {
      Leg l;
      try {
        l.s = lambda_scale(dom, e, cfg);
        l.ok = true;
      } catch (const std::exception& ex) {
        l.why = ex.what();
      }
      it = cache.emplace(e, std::move(l)).first;
    }
    return it->second;
  };

  std::vector<BoundReport> out;

  // lambda_2 >= h^2/4 on any domain, but only with an exact Cheeger value
  {
    BoundReport rep;
    rep.name = "cheeger_lower_bound";
    rep.lower = 0.25;
    const Leg& l2 = leg(Exponent::finite(2.0));
    const Leg& l1 = leg(Exponent::one());
    if (!l2.ok)
      rep.note = l2.why;
    else if (!l1.ok)
      rep.note = l1.why;
    else if (l1.s.method == "cheeger-bracket")
      rep.note = "Cheeger constant known only as a bracket";
    else {
      const double f = l2.s.value / l1.s.value;
      rep.value = f * f;
      rep.margin =
          2.0 * rep.value * std::hypot(rel_error(l2.s), rel_error(l1.s));
      rep.note = l2.s.method + "/" + l1.s.method;
    }
    out.push_back(rep.evaluate());
  }

  // rho Lambda_p > pi_p/2, strict, convex only; p = inf is the identity
  // rho/rho = 1 = pi_inf/2 and is not asserted
  for (const Exponent& e : es) {
    if (e.is_infinity()) continue;
    BoundReport rep;
    rep.name = "inradius_product(p=" + e.str() + ")";
    rep.lower = 0.5 * pi_p(e);
    rep.strict_lower = true;
    if (!convex)
      rep.note = "convex domains only";
    else if (const Leg& l = leg(e); !l.ok)
      rep.note = l.why;
    else {
      const double rho = domain_inradius(dom);
      rep.value = rho * l.s.value;
      rep.margin = rho * l.s.error;
      rep.note = l.s.method;
    }
    out.push_back(rep.evaluate());
  }

  // Lambda_p / h < pi_p/2, strict, convex only; p = 1 is h/h = 1 = pi_1/2
  for (const Exponent& e : es) {
    if (e.is_one()) continue;
    BoundReport rep;
    rep.name = "cheeger_ratio(p=" + e.str() + ")";
    rep.upper = 0.5 * pi_p(e);
    rep.strict_upper = true;
    const Leg& lh = leg(Exponent::one());
    if (!convex)
      rep.note = "convex domains only";
    else if (const Leg& l = leg(e); !l.ok)
      rep.note = l.why;
    else if (!lh.ok)
      rep.note = lh.why;
    else {
      rep.value = l.s.value / lh.s.value;
      rep.margin = rep.value * std::hypot(rel_error(l.s), rel_error(lh.s));
      rep.note = l.s.method + "/" + lh.s.method;
    }
    out.push_back(rep.evaluate());
  }

  // pairwise predicates over q < p
  for (std::size_t j = 0; j < es.size(); ++j)
    for (std::size_t i = 0; i < j; ++i) {
      const Exponent &q = es[i], &p = es[j];
      const Leg &lp = leg(p), &lq = leg(q);
      const bool ok = lp.ok && lq.ok;
      const double f = ok ? lp.s.value / lq.s.value : 0.0;
      const double fmargin =
          ok ? f * std::hypot(rel_error(lp.s), rel_error(lq.s)) : 0.0;
      const std::string tag = ok ? lp.s.method + "/" + lq.s.method
                                 : (lp.ok ? lq.why : lp.why);

      // F >= q/p on every domain (q/p -> 0 when p = inf)
      {
        BoundReport rep;
        rep.name = "scale_monotonicity(p=" + p.str() + ",q=" + q.str() + ")";
        rep.lower = p.is_infinity() ? 0.0 : q.as_double() / p.as_double();
        rep.note = tag;
        if (ok) {
          rep.value = f;
          rep.margin = fmargin;
        }
        out.push_back(rep.evaluate());
      }

      // two-sided sandwich in the ambient dimension, convex only
      {
        BoundReport rep;
        rep.name = "convex_sandwich(p=" + p.str() + ",q=" + q.str() + ")";
        const double pip = pi_p(p), piq = pi_p(q);
        const double qv = q.as_double();
        const double q_over_p = p.is_infinity() ? 0.0 : qv / p.as_double();
        rep.lower = std::max(q_over_p, pip / (d * piq));
        rep.upper = pip * std::min(0.5 * qv, d / piq);
        if (!convex)
          rep.note = "convex domains only";
        else {
          rep.note = tag;
          if (ok) {
            rep.value = f;
            rep.margin = fmargin;
          }
        }
        out.push_back(rep.evaluate());
      }
    }

  return out;
}

}  // namespace plap
