#include "desinc/catalog.hpp"

#include <cmath>
#include <limits>
#include <utility>

#include "desinc/errors.hpp"
#include "desinc/optimizer.hpp"

namespace desinc {

namespace {

constexpr double kPi = 3.141592653589793;
const double kLog2 = std::log(2.0);

using Fn = std::function<double(double)>;

double softplus(double y) {
  return std::max(y, 0.0) + std::log1p(std::exp(-std::abs(y)));
}

// log of sech^2(H), computed without overflow
double log_sech2(double H) {
  return 2.0 * (kLog2 - std::abs(H) - std::log1p(std::exp(-2.0 * std::abs(H))));
}

// ---- fused node evaluators g(t) = f(phi(t)) phi'(t), one per problem,
// written so both factors' blowups cancel in log space before exponentiation.

Fn fused_ex1(Fn Hf, Fn Hpf) {
  return [Hf = std::move(Hf), Hpf = std::move(Hpf)](double t) {
    const double H = Hf(t);
    const double Hp = Hpf(t);
    const double x = std::tanh(H);
    const double log1mx = kLog2 - softplus(2.0 * H);   // log(1 - x)
    const double log1px = kLog2 - softplus(-2.0 * H);  // log(1 + x)
    const double A = std::exp(1.0 / (1.0 + (x + 0.5) * (x + 0.5)));
    const double D2 = 0.25 + (x - 0.5) * (x - 0.5);
    const double L = log1mx;
    if (L == 0.0) return 0.0;
    const double logw = log_sech2(H) + std::log(Hp);
    const double mag = std::log(std::abs(L)) + logw - 0.5 * log1px;
    if (mag < -745.0) return 0.0;
    return A / D2 * (L > 0.0 ? 1.0 : -1.0) * std::exp(mag);
  };
}

Fn fused_ex2(Fn Hf, Fn Hpf) {
  return [Hf = std::move(Hf), Hpf = std::move(Hpf)](double t) {
    const double H = Hf(t);
    const double Hp = Hpf(t);
    if (std::abs(H) <= 30.0) {
      const double x = std::sinh(H);
      const double f = std::exp(10.0 / (1.0 + (x + 2.0) * (x + 2.0))) *
                       std::cos(10.0 / (0.25 + (x + 1.0) * (x + 1.0))) /
                       ((0.0625 + (x - 1.0) * (x - 1.0)) *
                        std::sqrt(1.0 + (x - 2.0) * (x - 2.0)));
      return f * std::cosh(H) * Hp;
    }
    const double lg = -2.0 * (std::abs(H) - kLog2) + std::log(Hp);
    return lg > -745.0 ? std::exp(lg) : 0.0;
  };
}

Fn fused_ex3(Fn Hf, Fn Hpf) {
  return [Hf = std::move(Hf), Hpf = std::move(Hpf)](double t) {
    const double H = Hf(t);
    const double Hp = Hpf(t);
    const double x = softplus(H);
    const double w = Hp / (1.0 + std::exp(-std::min(H, 700.0)));
    if (x == 0.0) return 0.0;
    const double sh =
        x < 710.0 ? std::sinh(x) : std::numeric_limits<double>::infinity();
    const double x3 = x * x * x;
    return x / (1.0 + x3 * x3 * sh * sh) * w;
  };
}

// phi(t) = exp(0.22 t - 0.017 e^{-t}) applied to the same half-line problem
double fused_ex3_lit(double t) {
  const double e = std::exp(-t);
  const double H = 0.22 * t - 0.017 * e;
  const double Hp = 0.22 + 0.017 * e;
  if (H > 700.0) return 0.0;
  const double x = std::exp(H);
  const double w = x * Hp;
  const double sh =
      x < 710.0 ? std::sinh(x) : std::numeric_limits<double>::infinity();
  const double x3 = x * x * x;
  return x / (1.0 + x3 * x3 * sh * sh) * w;
}

Fn fused_ex4(Fn Hf, Fn Hpf) {
  return [Hf = std::move(Hf), Hpf = std::move(Hpf)](double t) {
    const double H = Hf(t);
    const double Hp = Hpf(t);
    if (H > 100.0) {
      const double lg = -3.0 * H + std::log(Hp);
      return lg > -745.0 ? std::exp(lg) : 0.0;
    }
    const double x = std::exp(H);
    if (x == 0.0) return 0.0;
    const double f = x / (std::sqrt(1.0 + (x - 1.0) * (x - 1.0)) *
                          (0.25 + (x - 2.0) * (x - 2.0)) *
                          (1.0 / 9.0 + (x - 3.0) * (x - 3.0)));
    return f * x * Hp;
  };
}

Fn fused_ex5(Fn Hf, Fn Hpf) {
  return [Hf = std::move(Hf), Hpf = std::move(Hpf)](double t) {
    const double H = Hf(t);
    const double Hp = Hpf(t);
    const double x = 0.5 * (std::tanh(H) + 1.0);
    const double du = 1.0 / (1.0 + std::exp(2.0 * std::min(H, 350.0)));  // 1-x
    const double logw = log_sech2(H) + std::log(Hp) - kLog2;
    if (logw < -745.0 || du == 0.0 || x == 0.0) return 0.0;
    return x * du * std::exp(-x) / (0.25 + (x - 0.5) * (x - 0.5)) *
           std::exp(logw);
  };
}

Fn fused_tanh(Fn Hf, Fn Hpf) {
  return [Hf = std::move(Hf), Hpf = std::move(Hpf)](double t) {
    const double H = Hf(t);
    const double Hp = Hpf(t);
    if (std::abs(H) <= 30.0) {
      const double x = std::sinh(H);
      const double f = x == 0.0 ? 1.0 : std::tanh(x) / (x * (1.0 + x * x));
      return f * std::cosh(H) * Hp;
    }
    const double lg = -2.0 * (std::abs(H) - kLog2) + std::log(Hp);
    return lg > -745.0 ? std::exp(lg) : 0.0;
  };
}

// ---- inner-map extraction so one factory serves every transform the
// library actually produces for these problems.

struct InnerFns {
  Fn H;
  Fn Hp;
};

InnerFns inner_functions(const Transform& t) {
  if (const auto* c = dynamic_cast<const ConformalTransform*>(&t)) {
    const SinhPolyMap m = c->inner();
    return {[m](double v) { return map_eval(m, v); },
            [m](double v) { return map_deriv(m, v); }};
  }
  if (const auto* s = dynamic_cast<const SingleExpTransform*>(&t)) {
    const double k = s->slope();
    return {[k](double v) { return k * v; }, [k](double) { return k; }};
  }
  throw ConfigError("fused evaluator: unsupported transform kind");
}

using FusedFactory = Fn (*)(Fn, Fn);

std::function<Fn(const Transform&)> family_of(FusedFactory make) {
  return [make](const Transform& t) {
    InnerFns fns = inner_functions(t);
    return make(std::move(fns.H), std::move(fns.Hp));
  };
}

InnerFns canonical_inner() {
  return {[](double t) { return 0.5 * kPi * std::sinh(t); },
          [](double t) { return 0.5 * kPi * std::cosh(t); }};
}

CatalogScheme se_scheme(const OuterMap& outer, double slope, DecayParams params,
                        FusedFactory make) {
  CatalogScheme s;
  s.label = "se";
  s.transform = std::make_shared<SingleExpTransform>(outer, slope, "se");
  s.params = params;
  s.fused = make([slope](double t) { return slope * t; },
                 [slope](double) { return slope; });
  return s;
}

CatalogScheme de_scheme(const OuterMap& outer, DecayParams params,
                        FusedFactory make) {
  CatalogScheme s;
  s.label = "de";
  s.transform = std::make_shared<ConformalTransform>(canonical_de_transform(outer));
  s.params = params;
  InnerFns fns = canonical_inner();
  s.fused = make(std::move(fns.H), std::move(fns.Hp));
  return s;
}

CatalogScheme opt_scheme(const OuterMap& outer, const SinhPolyMap& map,
                         DecayParams params, FusedFactory make) {
  CatalogScheme s;
  s.label = "opt";
  s.transform = std::make_shared<ConformalTransform>(outer, map, "opt");
  s.params = params;
  s.fused = make([map](double t) { return map_eval(map, t); },
                 [map](double t) { return map_deriv(map, t); });
  return s;
}

double opt_beta2(const OuterMap& outer, double u0) {
  return outer.kind == OuterMapKind::FiniteTanh ? 0.5 * u0 : u0;
}

std::vector<CatalogEntry> build_catalog() {
  std::vector<CatalogEntry> out;

  {  // ex1: finite interval, endpoint log blowup and inverse square root
    CatalogEntry e;
    e.name = "ex1";
    e.expression =
        "exp(1/(1+(x+0.5)^2))*log(1-x)/((0.25+(x-0.5)^2)*sqrt(1+x))";
    const OuterMap outer{OuterMapKind::FiniteTanh, -1.0, 1.0};
    e.optimized =
        SinhPolyMap{0.1391201711269445,
                    {0.19081158624832746, 0.2193815422298071}};
    e.problem.name = e.name;
    e.problem.domain = outer;
    e.problem.integrand = [](double x) {
      if (x <= -1.0 || x >= 1.0) return 0.0;
      return std::exp(1.0 / (1.0 + (x + 0.5) * (x + 0.5))) *
             std::log(1.0 - x) /
             ((0.25 + (x - 0.5) * (x - 0.5)) * std::sqrt(1.0 + x));
    };
    e.problem.singularities = {{-0.5, 1.0}, {0.5, 0.5}};
    e.problem.reference = -2.04645081160694748690442050242;
    e.problem.fused_family = family_of(&fused_ex1);
    e.schemes.push_back(
        se_scheme(outer, 0.5, DecayParams{1.0, 0.5, 1.10715, false},
                  &fused_ex1));
    e.schemes.push_back(de_scheme(
        outer, DecayParams{1.0, 0.25 * kPi, 0.34695, true}, &fused_ex1));
    e.schemes.push_back(opt_scheme(
        outer, e.optimized,
        DecayParams{1.0, opt_beta2(outer, e.optimized.u0), 0.5 * kPi, true},
        &fused_ex1));
    out.push_back(std::move(e));
  }

  {  // ex2: real line, two essential singularities riding on pole pairs
    CatalogEntry e;
    e.name = "ex2";
    e.expression =
        "exp(10/(1+(x+2)^2))*cos(10/(0.25+(x+1)^2))"
        "/((0.0625+(x-1)^2)*sqrt(1+(x-2)^2))";
    const OuterMap outer{OuterMapKind::InfiniteSinh, 0.0, 0.0};
    e.optimized = SinhPolyMap{
        5.771509354726912e-06,
        {0.2543147561177209, 0.14935783111404858, -0.004543342147859553,
         9.987955001251747e-05}};
    e.problem.name = e.name;
    e.problem.domain = outer;
    e.problem.integrand = [](double x) {
      return std::exp(10.0 / (1.0 + (x + 2.0) * (x + 2.0))) *
             std::cos(10.0 / (0.25 + (x + 1.0) * (x + 1.0))) /
             ((0.0625 + (x - 1.0) * (x - 1.0)) *
              std::sqrt(1.0 + (x - 2.0) * (x - 2.0)));
    };
    e.problem.singularities = {{-2.0, 1.0}, {-1.0, 0.5}, {1.0, 0.25},
                               {2.0, 1.0}};
    e.problem.reference = 15.0133619876062770101030470326;
    e.problem.fused_family = family_of(&fused_ex2);
    e.schemes.push_back(se_scheme(
        outer, 1.0, DecayParams{1.0, 2.0, 0.35260, false}, &fused_ex2));
    e.schemes.push_back(de_scheme(
        outer, DecayParams{1.0, 0.5 * kPi, 0.22640, true}, &fused_ex2));
    e.schemes.push_back(opt_scheme(
        outer, e.optimized,
        DecayParams{1.0, opt_beta2(outer, e.optimized.u0), 0.5 * kPi, true},
        &fused_ex2));
    out.push_back(std::move(e));
  }

  {  // ex3: half-line on the log map, poles of 1 + x^6 sinh^2 x
    CatalogEntry e;
    e.name = "ex3";
    e.expression = "x/(1+x^6*sinh(x)^2)";
    const OuterMap outer{OuterMapKind::SemiInfLog, 0.0, 0.0};
    e.optimized =
        SinhPolyMap{0.2672465406936717,
                    {0.30707242372931257, 0.20336471766628774,
                     -0.03196624591174697}};
    e.problem.name = e.name;
    e.problem.domain = outer;
    e.problem.integrand = [](double x) {
      if (x <= 0.0) return 0.0;
      const double sh =
          x < 710.0 ? std::sinh(x) : std::numeric_limits<double>::infinity();
      const double x3 = x * x * x;
      return x / (1.0 + x3 * x3 * sh * sh);
    };
    e.problem.singularities = {{0.906548460059, 0.349016528493},
                               {-0.906548460059, 0.349016528493},
                               {0.0321952488556, 3.14258209392}};
    e.problem.reference = 0.503686664239138510865433949459;
    e.problem.fused_family = family_of(&fused_ex3);

    // canonical plain-DE strip width: nearest strip preimage pulled back
    // through the pi/2 sinh inner map
    double d3 = std::numeric_limits<double>::infinity();
    for (const auto& z : preimages(e.problem.singularities, outer))
      d3 = std::min(d3, std::imag(std::asinh(2.0 * z / kPi)));

    e.schemes.push_back(se_scheme(
        outer, 1.0, DecayParams{1.0, 2.0, 1.13615, false}, &fused_ex3));
    e.schemes.push_back(
        de_scheme(outer, DecayParams{1.0, 0.5 * kPi, d3, true}, &fused_ex3));
    {
      CatalogScheme lit;
      lit.label = "de-lit";
      lit.transform = std::make_shared<LiteratureExpTransform>();
      lit.params = DecayParams{0.22, 2.0, 1.58223, true};
      lit.fused = &fused_ex3_lit;
      e.schemes.push_back(std::move(lit));
    }
    e.schemes.push_back(opt_scheme(
        outer, e.optimized,
        DecayParams{1.0, opt_beta2(outer, e.optimized.u0), 0.5 * kPi, true},
        &fused_ex3));
    out.push_back(std::move(e));
  }

  {  // ex4: half-line on the exp map, three pole pairs
    CatalogEntry e;
    e.name = "ex4";
    e.expression = "x/(sqrt(1+(x-1)^2)*(0.25+(x-2)^2)*(1/9+(x-3)^2))";
    const OuterMap outer{OuterMapKind::SemiInfExp, 0.0, 0.0};
    e.optimized =
        SinhPolyMap{0.009435312800722446,
                    {0.9335086104815726, 0.08408676166656482,
                     -0.009984583899717694}};
    e.problem.name = e.name;
    e.problem.domain = outer;
    e.problem.integrand = [](double x) {
      if (x <= 0.0) return 0.0;
      return x / (std::sqrt(1.0 + (x - 1.0) * (x - 1.0)) *
                  (0.25 + (x - 2.0) * (x - 2.0)) *
                  (1.0 / 9.0 + (x - 3.0) * (x - 3.0)));
    };
    e.problem.singularities = {{1.0, 1.0}, {2.0, 0.5}, {3.0, 1.0 / 3.0}};
    e.problem.reference = 12.5561272649571457524072745777;
    e.problem.fused_family = family_of(&fused_ex4);
    e.schemes.push_back(se_scheme(
        outer, 1.0, DecayParams{1.0, 2.0, 0.11066, false}, &fused_ex4));
    e.schemes.push_back(de_scheme(
        outer, DecayParams{1.0, 0.5 * kPi, 0.05762, true}, &fused_ex4));
    e.schemes.push_back(opt_scheme(
        outer, e.optimized,
        DecayParams{1.0, opt_beta2(outer, e.optimized.u0), 0.5 * kPi, true},
        &fused_ex4));
    out.push_back(std::move(e));
  }

  {  // ex5: unit interval, a single conjugate pole pair at 0.5 +- 0.5i
    CatalogEntry e;
    e.name = "ex5";
    e.expression = "x*(1-x)*exp(-x)/(0.25+(x-0.5)^2)";
    const OuterMap outer{OuterMapKind::FiniteTanh, 0.0, 1.0};
    e.optimized = SinhPolyMap{0.25 * kPi, {0.0}};
    e.problem.name = e.name;
    e.problem.domain = outer;
    e.problem.integrand = [](double x) {
      if (x <= 0.0 || x >= 1.0) return 0.0;
      return x * (1.0 - x) * std::exp(-x) / (0.25 + (x - 0.5) * (x - 0.5));
    };
    e.problem.singularities = {{0.5, 0.5}};
    e.problem.reference = 0.353533443018969270526817860829;
    e.problem.fused_family = family_of(&fused_ex5);
    e.schemes.push_back(se_scheme(
        outer, 0.5, DecayParams{1.0, 2.0, 0.5 * kPi, false}, &fused_ex5));
    e.schemes.push_back(de_scheme(
        outer, DecayParams{1.0, 0.25 * kPi, kPi / 6.0, true}, &fused_ex5));
    e.schemes.push_back(opt_scheme(
        outer, e.optimized, DecayParams{1.0, 0.125 * kPi, 0.5 * kPi, true},
        &fused_ex5));
    out.push_back(std::move(e));
  }

  {  // even tanh integral over the real line; no declared singularities,
     // kept as the plain-map validation row
    CatalogEntry e;
    e.name = "tanh";
    e.expression = "tanh(x)/(x*(1+x^2))";
    const OuterMap outer{OuterMapKind::InfiniteSinh, 0.0, 0.0};
    e.problem.name = e.name;
    e.problem.domain = outer;
    e.problem.integrand = [](double x) {
      if (x == 0.0) return 1.0;
      return std::tanh(x) / (x * (1.0 + x * x));
    };
    e.problem.reference = 2.0797547001201714896818999965;
    e.problem.fused_family = family_of(&fused_tanh);
    e.schemes.push_back(se_scheme(
        outer, 1.0, DecayParams{1.0, 2.0, 1.0, false}, &fused_tanh));
    e.schemes.push_back(de_scheme(
        outer, DecayParams{1.0, 0.5 * kPi, 1.0, true}, &fused_tanh));
    out.push_back(std::move(e));
  }

  return out;
}

BOConfig build_bo_config() {
  BOConfig c;
  c.solution.terms = {{-1.0, 0.3}, {0.0, 0.1}, {1.0, 0.2}};
  c.wave_speed = 1.0;
  c.singularities = {{-1.0, 0.3}, {0.0, 0.1}, {1.0, 0.2}};
  c.optimized =
      SinhPolyMap{1.1451448e-07, {0.045305, 0.063595, -1.21e-4}};

  const OuterMap outer{OuterMapKind::InfiniteSinh, 0.0, 0.0};
  {
    BOScheme s;
    s.label = "se";
    s.transform = std::make_shared<SingleExpTransform>(outer, 1.0, "se");
    s.params = DecayParams{1.0, 0.5, 0.10017, false};
    c.schemes.push_back(std::move(s));
  }
  {
    BOScheme s;
    s.label = "de";
    s.transform =
        std::make_shared<ConformalTransform>(canonical_de_transform(outer));
    s.params = DecayParams{1.0, 0.25 * kPi, 0.06381, true};
    c.schemes.push_back(std::move(s));
  }
  {
    BOScheme s;
    s.label = "opt";
    s.transform =
        std::make_shared<ConformalTransform>(outer, c.optimized, "opt");
    s.params = DecayParams{1.0, c.optimized.u0, 0.5 * kPi, true};
    c.schemes.push_back(std::move(s));
  }
  return c;
}

}  // namespace

const CatalogScheme& CatalogEntry::scheme(const std::string& label) const {
  for (const auto& s : schemes)
    if (s.label == label) return s;
  throw ConfigError("catalog entry '" + name + "' has no scheme '" + label +
                    "'");
}

const BOScheme& BOConfig::scheme(const std::string& label) const {
  for (const auto& s : schemes)
    if (s.label == label) return s;
  throw ConfigError("no traveling-wave scheme '" + label + "'");
}

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = build_catalog();
  return entries;
}

const CatalogEntry& catalog_entry(const std::string& name) {
  for (const auto& e : catalog())
    if (e.name == name) return e;
  throw ConfigError("unknown catalog entry '" + name + "'");
}

const BOConfig& bo_config() {
  static const BOConfig config = build_bo_config();
  return config;
}

}  // namespace desinc
