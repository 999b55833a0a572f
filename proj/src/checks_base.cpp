// base suite: the Kaehler-Einstein S^2 x S^2 and the almost Kaehler Weitzenboeck formula.

#include <cmath>

#include "check_util.hpp"
#include "nkg/sekigawa.hpp"

namespace nkg {

using namespace checks;

namespace {

using BaseFn = std::function<double(const NChart&, const Point&, Mean&)>;

CheckDef base(std::string id, double tol, std::string desc, BaseFn f) {
  CheckDef d;
  d.id = std::move(id);
  d.suite = "base";
  d.models = {"s2s2"};
  d.tolerance = tol;
  d.description = std::move(desc);
  d.run = [f = std::move(f)](CheckInput& in) {
    const NChartPtr chart = in.model.base();
    Mean m;
    auto out = sample_points(in, chart->domain(), [&](const Point& p) { return f(*chart, p, m); });
    out.value = m.get();
    return out;
  };
  return d;
}

}  // namespace

void register_base_checks(std::vector<CheckDef>& out) {
  out.push_back(base("base-einstein", 1e-7, "Ric(g0) = 12 g0 on S^2(r) x S^2(r), r = 1/(2 sqrt3)",
                     [](const NChart& c, const Point& p, Mean& m) {
                       LocalGeometry<4, 4> geo(c, p);
                       const auto ric = values(geo.ricci());
                       m.add(value_of(geo.scalar_curvature()) / 4.0);
                       return geo.norm(ric - geo.g_value() * 12.0);
                     }));
  out.push_back(base("base-kahler-structures", 1e-8,
                     "I0 and Jhat are g0-orthogonal complex structures, commute and are parallel; "
                     "their Kaehler forms are closed",
                     [](const NChart& c, const Point& p, Mean&) {
                       LocalGeometry<4, 4> geo(c, p);
                       const auto id = identity_endomorphism<double>(4);
                       double res = 0.0;
                       for (const char* name : {"I0", "Jhat"}) {
                         const auto& a = geo.endomorphism(name);
                         const auto av = values(a);
                         const auto w = form_of_endomorphism(a, geo.g());
                         const auto wv = values(w);
                         res = std::max({res, geo.norm(compose(av, av) + id), geo.norm(wv + permute(wv, {1, 0})),
                                         geo.norm(values(geo.nabla(a))), geo.norm(values(exterior_derivative(w)))});
                       }
                       const auto i0 = values(geo.endomorphism("I0")), jh = values(geo.endomorphism("Jhat"));
                       return std::max(res, geo.norm(commutator(i0, jh)));
                     }));
  out.push_back(base("sekigawa-weitzenboeck", 1e-5,
                     "Weitzenboeck formula for almost Kaehler Einstein (g0, Jhat): max of |lhs|, |rhs|, |lhs - rhs|",
                     [](const NChart& c, const Point& p, Mean& m) {
                       const auto t = sekigawa_terms_at(c, p, "Jhat");
                       m.add(t.lhs);
                       return std::max({std::abs(t.lhs), std::abs(t.rhs), t.residual()});
                     }));
  out.push_back(base("sekigawa-sstar", 1e-7, "s* = s for the parallel structure Jhat",
                     [](const NChart& c, const Point& p, Mean& m) {
                       const auto t = sekigawa_terms_at(c, p, "Jhat");
                       m.add(t.s_star);
                       return std::abs(t.s_star - t.s);
                     }));
  out.push_back(base("sekigawa-non-einstein-refused", 0.0,
                     "the formula is refused on the non-Einstein S^2(1) x S^2(2); residual 1 if it was evaluated",
                     [](const NChart&, const Point& p, Mean&) {
                       const NChartPtr other = build_s2s2(1.0, 2.0);
                       try {
                         sekigawa_terms_at(*other, p, "Jhat");
                       } catch (const PreconditionError&) {
                         return 0.0;
                       }
                       return 1.0;
                     }));
}

}  // namespace nkg
