#include "sighyp/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "sighyp/bessel_cert.hpp"
#include "sighyp/domain.hpp"
#include "sighyp/format.hpp"
#include "sighyp/pde_nested.hpp"
#include "sighyp/stopped_bm.hpp"
#include "sighyp/development.hpp"

namespace sighyp {

namespace {

constexpr double kTableTol = 1e-5;
constexpr int kCells = 500;

// Published rows for d = 3..8: {value, error-or-second-value}.
constexpr std::array<std::array<double, 2>, 6> kTable1 = {{{-2.072008, 6.951356},
                                                          {-1.682841, 8.366543},
                                                          {-1.315936, 6.921044},
                                                          {-1.107269, 4.734511},
                                                          {-0.693811, 2.530460},
                                                          {-0.408603, 1.115177}}};
constexpr std::array<std::array<double, 2>, 6> kTable2 = {{{-48.656672, 1.266852},
                                                          {-55.063129, 1.265336},
                                                          {-51.368007, 5.982517},
                                                          {-40.528560, 3.647551},
                                                          {-26.851665, 12.270795},
                                                          {-13.908808, 5.810051}}};
constexpr std::array<std::array<double, 2>, 6> kTable4 = {{{-3.487949, 0.366411},
                                                          {-5.367159, 0.317482},
                                                          {-6.082985, 1.552336},
                                                          {-5.465016, 0.811930},
                                                          {-3.964234, 2.802239},
                                                          {-2.193441, 1.131338}}};

std::string dtag(int d) { return "d=" + std::to_string(d); }

std::string num(double x)
{
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

CertInterval cell(int i)
{
    const double a = 2.5 + 0.5 * i / kCells, b = 2.5 + 0.5 * (i + 1) / kCells;
    return {a, b};
}

// Sign of successive differences on a 1e-4 grid over [2.5, 3].
template <class F>
bool monotone_decreasing_on_grid(F f)
{
    double prev = f(2.5);
    for (int i = 1; i <= 5000; ++i) {
        const double v = f(2.5 + i * 1e-4);
        if (!(v < prev)) return false;
        prev = v;
    }
    return true;
}

}  // namespace

bool Report::pass() const
{
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

void Report::add(Check c) { checks.push_back(std::move(c)); }

void Report::near(std::string id, double value, double reference, double tol, std::string note)
{
    add({std::move(id), value, reference, "~=", tol, std::abs(value - reference) <= tol,
         std::move(note)});
}

void Report::less(std::string id, double value, double bound, std::string note)
{
    add({std::move(id), value, bound, "<", 0.0, value < bound, std::move(note)});
}

void Report::greater(std::string id, double value, double bound, std::string note)
{
    add({std::move(id), value, bound, ">", 0.0, value > bound, std::move(note)});
}

void Report::flag(std::string id, bool ok, std::string note)
{
    add({std::move(id), ok ? 1.0 : 0.0, 1.0, "==", 0.0, ok, std::move(note)});
}

void Report::info(std::string id, double value, std::string note)
{
    add({std::move(id), value, 0.0, "info", 0.0, true, std::move(note)});
}

void Report::append(const Report& other)
{
    for (const auto& c : other.checks) {
        Check k = c;
        k.id = other.title + ": " + c.id;
        checks.push_back(std::move(k));
    }
}

void write_report_text(std::ostream& os, const Report& r)
{
    os << "== " << r.title << " ==\n";
    for (const auto& c : r.checks) {
        char line[512];
        const char* tag = c.relation == "info" ? "INFO" : (c.pass ? "PASS" : "FAIL");
        if (c.relation == "info")
            std::snprintf(line, sizeof line, "%-4s  %-58s %18s", tag, c.id.c_str(),
                          num(c.value).c_str());
        else if (c.relation == "~=")
            std::snprintf(line, sizeof line, "%-4s  %-58s %18s ~= %-16s (tol %s)", tag,
                          c.id.c_str(), num(c.value).c_str(), num(c.reference).c_str(),
                          num(c.tolerance).c_str());
        else
            std::snprintf(line, sizeof line, "%-4s  %-58s %18s %s %s", tag, c.id.c_str(),
                          num(c.value).c_str(), c.relation.c_str(), num(c.reference).c_str());
        os << line;
        if (!c.note.empty()) os << "  # " << c.note;
        os << '\n';
    }
    os << (r.pass() ? "RESULT PASS" : "RESULT FAIL") << '\n';
}

void write_report_csv(std::ostream& os, const Report& r)
{
    os << "check,value,relation,reference,tolerance,pass,note\n";
    auto quote = [](const std::string& s) {
        std::string q = "\"";
        for (char ch : s) {
            if (ch == '"') q += '"';
            q += ch;
        }
        return q + "\"";
    };
    for (const auto& c : r.checks)
        os << quote(c.id) << ',' << fmt_double(c.value) << ',' << c.relation << ','
           << fmt_double(c.reference) << ',' << fmt_double(c.tolerance) << ',' << (c.pass ? 1 : 0)
           << ',' << quote(c.note) << '\n';
}

Report reproduce_table1()
{
    Report r{"table1 (Theta, n=7)", {}};
    for (int d = 3; d <= 8; ++d) {
        const DimConstants k = dim_constants(d);
        const double x = std::abs(3.0 * k.beta_p / 2.0);
        const double M = std::max(remainder_bound_table(k.nu - 1.0, x, 7),
                                  remainder_bound_table(k.nu, x, 7));
        const double K = std::abs(k.eta_m * k.beta_m);
        auto err = [&](double l) {
            return K * (M * std::abs(bessel_j(k.nu, l * k.beta_p / 2.0, 7)) + M * M +
                        std::abs(bessel_j(k.nu - 1.0, l * k.beta_m / 2.0, 7)) * M);
        };
        const double up = theta_truncated(2.5, d, 7) + err(2.5);
        const double lo = theta_truncated(3.0, d, 7) - err(3.0);
        const auto& pub = kTable1[static_cast<std::size_t>(d - 3)];
        r.near(dtag(d) + " [Theta+Err](2.5)", up, pub[0], kTableTol);
        r.near(dtag(d) + " [Theta-Err](3)", lo, pub[1], kTableTol);
        r.flag(dtag(d) + " sign change [Theta+Err](2.5) < 0 < [Theta-Err](3)", up < 0.0 && lo > 0.0);
        const CertInterval ca = theta_certified(CertInterval(2.5), d, 7);
        const CertInterval cb = theta_certified(CertInterval(3.0), d, 7);
        r.flag(dtag(d) + " certified Theta(2.5) < 0 < Theta(3)", ca.negative() && cb.positive(),
               ca.str() + " " + cb.str());
    }
    return r;
}

Report reproduce_table2()
{
    Report r{"table2 (ball numerator, n=5)", {}};
    for (int d = 3; d <= 8; ++d) {
        const DimConstants k = dim_constants(d);
        const double g = gamma_half_integer(k.nu);
        const double val = numerator_ball_truncated(2.5, d, 5);
        const double err = std::abs(k.eta_m * k.beta_m * pow_order(3.0 * k.beta_m / 4.0, k.nu - 1.0)) /
                           g * remainder_bound_table(k.nu, std::abs(3.0 * k.beta_p / 2.0), 5);
        const auto& pub = kTable2[static_cast<std::size_t>(d - 3)];
        r.near(dtag(d) + " N(2.5)", val, pub[0], kTableTol);
        r.near(dtag(d) + " Err", err, pub[1], kTableTol);
        r.less(dtag(d) + " N(2.5) + Err", val + err, 0.0);
        r.flag(dtag(d) + " N decreasing on 1e-4 grid of [2.5,3]",
               monotone_decreasing_on_grid([&](double l) { return numerator_ball_truncated(l, d, 5); }));
        double worst = -INFINITY;
        for (int i = 0; i < kCells; ++i) worst = std::max(worst, numerator_ball_certified(cell(i), d, 5).hi());
        r.less(dtag(d) + " certified sup N on [2.5,3]", worst, 0.0, "interval cover, 500 cells");
    }
    return r;
}

Report reproduce_table4()
{
    Report r{"table4 (general-domain numerator, n=6)", {}};
    for (int d = 3; d <= 8; ++d) {
        const DimConstants k = dim_constants(d);
        const double g = gamma_half_integer(k.nu);
        const auto [n1, n2] = numerators_general_truncated(2.5, d, 6);
        const double A = std::abs(k.eta_m * k.beta_m * pow_order(3.0 * k.beta_m / 4.0, k.nu - 1.0));
        const double B = std::abs(k.eta_p * k.beta_p * k.eta_m * k.beta_m / (8.0 * d) *
                                  pow_order(3.0 * k.beta_p / 4.0, k.nu - 1.0));
        const double err = (A * remainder_bound_table(k.nu, std::abs(3.0 * k.beta_p / 2.0), 6) +
                            B * remainder_bound_table(k.nu - 1.0, std::abs(3.0 * k.beta_m / 2.0), 6)) /
                           g;
        const auto& pub = kTable4[static_cast<std::size_t>(d - 3)];
        r.near(dtag(d) + " N(2.5)", n1 + n2, pub[0], kTableTol);
        r.near(dtag(d) + " Err", err, pub[1], kTableTol);
        r.less(dtag(d) + " N(2.5) + Err", n1 + n2 + err, 0.0);
        r.flag(dtag(d) + " N decreasing on 1e-4 grid of [2.5,3]",
               monotone_decreasing_on_grid([&](double l) {
                   const auto [a, b] = numerators_general_truncated(l, d, 6);
                   return a + b;
               }));
        double sup1 = -INFINITY, inf2 = INFINITY, sup12 = -INFINITY, gap = INFINITY;
        for (int i = 0; i < kCells; ++i) {
            const auto [c1, c2] = numerators_general_certified(cell(i), d, 6);
            sup1 = std::max(sup1, c1.hi());
            inf2 = std::min(inf2, c2.lo());
            sup12 = std::max(sup12, (c1 + c2).hi());
            gap = std::min(gap, (abs(c1) - abs(c2)).lo());
        }
        r.less(dtag(d) + " certified sup N1 on [2.5,3]", sup1, 0.0, "interval cover");
        r.greater(dtag(d) + " certified inf N2 on [2.5,3]", inf2, 0.0, "interval cover");
        r.less(dtag(d) + " certified sup (N1+N2) on [2.5,3]", sup12, 0.0, "interval cover");
        r.greater(dtag(d) + " certified inf (|N1|-|N2|) on [2.5,3]", gap, 0.0, "interval cover");
    }
    return r;
}

namespace {

struct Lemma2dPoly {
    std::vector<long double> coeff;   // N(mu) = sum_j coeff[j] mu^j
    std::vector<long double> shifted; // sum_i C_i (mu - 2.5)^i
};

// N(mu) = Im{conj(alpha) J1(mu conj(zeta))} + Im{J0(mu conj(zeta))}, k <= n.
Lemma2dPoly lemma_poly(int n)
{
    using C = std::complex<long double>;
    const DimConstants k = dim_constants(2);
    const C zb(k.zeta.real(), -k.zeta.imag());
    const C ab(k.alpha.real(), -k.alpha.imag());
    const C h = zb / 2.0L;
    Lemma2dPoly p;
    p.coeff.assign(static_cast<std::size_t>(2 * n + 2), 0.0L);
    long double fk = 1.0L;  // k!
    for (int j = 0; j <= n; ++j) {
        if (j > 0) fk *= j;
        const long double sgn = j % 2 ? -1.0L : 1.0L;
        C h2k = 1.0L;
        for (int i = 0; i < 2 * j; ++i) h2k *= h;
        p.coeff[2 * j] += (sgn * h2k / (fk * fk)).imag();
        p.coeff[2 * j + 1] += (ab * sgn * h2k * h / (fk * fk * (j + 1))).imag();
    }
    const std::size_t deg = p.coeff.size();
    p.shifted.assign(deg, 0.0L);
    for (std::size_t i = 0; i < deg; ++i) {
        long double binom = 1.0L;
        for (std::size_t j = i; j < deg; ++j) {
            if (j > i) binom = binom * j / (j - i);
            p.shifted[i] += binom * p.coeff[j] * std::pow(2.5L, static_cast<long double>(j - i));
        }
    }
    return p;
}

}  // namespace

Report verify_2d_lemma()
{
    Report r{"lemma2d (d=2 numerator, n=6)", {}};
    const int n = 6;
    const DimConstants k = dim_constants(2);
    const Lemma2dPoly p = lemma_poly(n);
    const auto& C = p.shifted;
    r.less("C0", static_cast<double>(C[0]), -0.119150);
    r.less("C1", static_cast<double>(C[1]), -0.169);
    r.less("C2", static_cast<double>(C[2]), -0.184);
    r.less("C3", static_cast<double>(C[3]), -0.049);
    r.greater("C4", static_cast<double>(C[4]), 0.0);
    long double tail = 0.0L;
    for (std::size_t i = 4; i < C.size(); ++i) tail += std::abs(C[i]) / std::pow(2.0L, static_cast<long double>(i));
    r.less("tail sum_{i>=4} |C_i|/2^i <= 0.00036", static_cast<double>(tail), 0.00036 + 1e-18);
    r.less("tail sum_{i>=4} |C_i|/2^i <= 0.00038", static_cast<double>(tail), 0.00038 + 1e-18,
           "the final sum uses 0.00038 while the tail is stated as <= 0.00036; both hold");

    const double x = 3.0 * std::abs(k.zeta);
    const double e0 = remainder_bound(0.0, x, n + 1), e1 = remainder_bound(1.0, x, n + 1);
    const double rsup = std::max(e0, e1);
    const double alpha = std::abs(k.alpha);
    r.less("remainder sup max(|R0|,|R1|) on [0,3] <= 0.0006367", rsup, 0.0006367 + 1e-18,
           "tail from k=7");
    r.less("E*(3|zeta|, 6, 1) <= 0.0006367", remainder_bound_table(1.0, x, 6), 0.0006367,
           "closed-form bound at n=6 reproduces the stated constant");
    r.info("E*(3|zeta|, 6, 0)", remainder_bound_table(0.0, x, 6), "nu=0 term at the same truncation");
    const double combined = (alpha + 1.0) * rsup;
    r.less("combined (|alpha|+1) * remainder sup <= 0.0011395", combined, 0.0011395 + 1e-18);
    r.info("(|alpha|+1) * 0.0006367", (alpha + 1.0) * 0.0006367, "differs from the stated 0.0011395");
    r.near("T(2.5) = -0.1181564882", static_cast<double>(C[0]), -0.1181564882, 1e-9,
           "C0 at n=6; blocked, see README");
    {
        const Lemma2dPoly p4 = lemma_poly(4);
        const double t4 = static_cast<double>(p4.shifted[0]);
        r.info("T(2.5) with k <= 4", t4, "closest reading, off by " + num(std::abs(t4 + 0.1181564882)));
    }
    r.less("final C0 + tail + combined", static_cast<double>(C[0] + tail) + combined, 0.0);
    r.less("final -0.1181564882 + 0.00038 + 0.0011395", -0.1181564882 + 0.00038 + 0.0011395, 0.0);
    r.less("final C0 + 0.00038 + 0.0011395", static_cast<double>(C[0]) + 0.00038 + 0.0011395, 0.0);

    // Certified statements over [2.5, 3] on interval cells.
    const CertDimConstants kc = dim_constants_certified(2);
    const CertComplex zb = CertInterval(0.5) * kc.beta_m;  // conj(zeta)
    const CertComplex zeta = CertInterval(0.5) * kc.beta_p;
    const CertComplex al = zeta + CertInterval(0.5) * (zeta * zeta * zeta);
    const CertComplex abar = conj(al);
    const CertInterval aabs = abs(al);
    double sup_n = -INFINITY, sup_j1 = -INFINITY, inf_j0 = INFINITY;
    for (int i = 0; i < kCells; ++i) {
        const CertInterval mu = cell(i);
        const CertComplex z = mu * zb;
        const double zx = abs(z).hi();
        const double r0 = remainder_bound(0.0, zx, n + 1) * (1 + 1e-12);
        const double r1 = remainder_bound(1.0, zx, n + 1) * (1 + 1e-12);
        const CertInterval j1 = (abar * bessel_j_certified(1.0, z, n)).im;
        const CertInterval j0 = bessel_j_certified(0.0, z, n).im;
        const CertInterval e1 = aabs * CertInterval(r1);
        sup_n = std::max(sup_n, (j1 + j0 + symmetric(e1.hi() + r0)).hi());
        sup_j1 = std::max(sup_j1, (j1 + symmetric(e1.hi())).hi());
        inf_j0 = std::min(inf_j0, (j0 + symmetric(r0)).lo());
    }
    r.less("certified sup (Im{conj(a)J1} + Im{J0}) on [2.5,3]", sup_n, 0.0, "interval cover");
    r.less("certified sup Im{conj(a)J1(mu conj(zeta))} on [2.5,3]", sup_j1, -1.3, "interval cover");
    r.greater("certified inf Im{J0(mu conj(zeta))} on [2.5,3]", inf_j0, 0.0, "interval cover");
    return r;
}

bool RootBracket::certified() const
{
    return (theta_lo.negative() && theta_hi.positive()) || (theta_lo.positive() && theta_hi.negative());
}

RootBracket bracket_theta_root(int d, double a, double b, double width)
{
    if (!(a < b) || !(width > 0.0)) throw std::invalid_argument("need a < b and width > 0");
    constexpr int kCertTerms = 20;
    auto sign_at = [&](double x, CertInterval& enc, int& uncertified) {
        enc = theta_certified(CertInterval(x), d, kCertTerms);
        if (enc.negative()) return -1;
        if (enc.positive()) return 1;
        ++uncertified;
        return theta(x, d) < 0.0 ? -1 : 1;
    };
    RootBracket rb;
    rb.d = d;
    int bad = 0;
    CertInterval ea, eb;
    const int sa = sign_at(a, ea, bad), sb = sign_at(b, eb, bad);
    if (sa == sb)
        throw std::runtime_error("Theta has the same sign at both ends of [" + num(a) + ", " +
                                 num(b) + "] for d = " + std::to_string(d));
    double lo = a, hi = b;
    while (hi - lo > width) {
        const double m = 0.5 * (lo + hi);
        if (m <= lo || m >= hi) break;
        CertInterval em;
        const int sm = sign_at(m, em, bad);
        if (sm == sa) {
            lo = m;
            ea = em;
        } else {
            hi = m;
            eb = em;
        }
    }
    rb.lo = lo;
    rb.hi = hi;
    rb.theta_lo = ea;
    rb.theta_hi = eb;
    rb.root = 0.5 * (lo + hi);
    rb.width = hi - lo;
    rb.uncertified_steps = bad;
    return rb;
}

Report verify_brackets()
{
    Report r{"brackets (Theta root in ]2.5,3[)", {}};
    for (int d = 2; d <= 8; ++d) {
        const RootBracket b = bracket_theta_root(d);
        r.flag(dtag(d) + " certified sign change", b.certified(),
               "Theta(lo) " + b.theta_lo.str() + ", Theta(hi) " + b.theta_hi.str());
        r.flag(dtag(d) + " bracket inside ]2.5,3[", b.lo > 2.5 && b.hi < 3.0);
        r.less(dtag(d) + " width", b.width, 1e-8 + 1e-15);
        r.info(dtag(d) + " root", b.root);
        r.info(dtag(d) + " uncertified bisection steps", b.uncertified_steps);
    }
    return r;
}

Report blowup_scan(int d, double eps, double p, double q, const std::vector<double>& deltas)
{
    Report r{"blowup " + dtag(d), {}};
    const RootBracket b = bracket_theta_root(d);
    const double lstar = b.root / eps;
    r.info("lambda* (eps=" + num(eps) + ")", lstar);
    double prev = 0.0;
    bool mono = true;
    double last = 0.0;
    for (std::size_t i = 0; i < deltas.size(); ++i) {
        const double v = std::abs(hd1_center_general(eps, lstar - deltas[i], d, p, q));
        r.info("|hd1(0)| at lambda* - " + num(deltas[i]), v);
        if (i > 0 && !(v > prev)) mono = false;
        prev = last = v;
    }
    r.flag("|hd1(0)| increases as delta shrinks", mono);
    r.greater("|hd1(0)| at smallest delta", last, 1e3);
    const double far = hd1_center_general(eps, 1.0 / eps, d, p, q);
    r.flag("hd1(0) at lambda = 1/eps finite and >= 1", std::isfinite(far) && far >= 1.0, num(far));
    return r;
}

Report verify_blowup()
{
    Report r{"blowup", {}};
    for (int d = 2; d <= 8; ++d) r.append(blowup_scan(d));
    return r;
}

Report verify_closed_forms()
{
    Report r{"closed forms", {}};
    for (int d = 2; d <= 8; ++d) {
        for (double lambda : {0.5, 1.3, 2.0}) {
            double worst = 0.0;
            for (int i = 1; i <= 8; ++i) {
                const double rr = i / 9.0;
                const auto [a, c] = ode_residual(ball_closed_form_jets(rr, lambda, d), rr, lambda, d);
                worst = std::max({worst, std::abs(a), std::abs(c)});
            }
            const std::string tag = dtag(d) + " lambda=" + num(lambda);
            r.less(tag + " ball ODE residual (8 points)", worst, 1e-9);
            r.near(tag + " h1(1)", h1_closed_form(1.0, lambda, d), 0.0, 1e-10);
            r.near(tag + " hd1(1)", hd1_closed_form(1.0, lambda, d), 1.0, 1e-10);
        }
    }
    {
        double worst = 0.0;
        for (double lambda : {0.5, 1.3, 2.0})
            for (int i = 0; i <= 10; ++i) {
                const double rr = i / 10.0;
                const GeneralSolution a = ansatz_2d(rr, lambda, 1.0, 0.0, 1.0);
                worst = std::max({worst, std::abs(a.h1 - h1_closed_form(rr, lambda, 2)),
                                  std::abs(a.hd1 - hd1_closed_form(rr, lambda, 2))});
            }
        r.less("d=2 ansatz (m, n) vs ball closed form", worst, 1e-10);
    }
    for (double lambda : {1.3, 2.2}) {
        const D9Constants k = d9_constants(lambda);
        const GeneralSolution s = d9_solution(1.0, lambda, k);
        const std::string tag = "d=9 lambda=" + num(lambda);
        r.near(tag + " h1(1)", s.h1, 0.0, 1e-10);
        r.near(tag + " hd1(1)", s.hd1, 1.0, 1e-10);
        double worst = 0.0;
        for (int i = 2; i <= 9; ++i) {
            const auto [a, c] = d9_residual(i / 10.0, lambda);
            worst = std::max({worst, std::abs(a), std::abs(c)});
        }
        r.less(tag + " ODE residual r=0.2..0.9", worst, 1e-8);
        r.info(tag + " W[lambda] (lemma)", k.w);
        r.info(tag + " Theta with d=9 constants", theta(lambda, 9),
               "the d != 9 determinant vanishes identically when beta_+ = beta_-");
    }
    return r;
}

Report verify_all()
{
    Report r{"all", {}};
    r.append(reproduce_table1());
    r.append(reproduce_table2());
    r.append(reproduce_table4());
    r.append(verify_2d_lemma());
    r.append(verify_brackets());
    r.append(verify_blowup());
    r.append(verify_closed_forms());
    return r;
}

Report mc_crosscheck_suite(const CrosscheckOptions& opt)
{
    Report r{"mc crosscheck (" + std::to_string(opt.paths) + " paths, dt=" + num(opt.step) + ")", {}};
    auto within = [&](const std::string& id, double mean, double se, double target) {
        r.add({id, mean, target, "~=", 4.0 * se, std::abs(mean - target) <= 4.0 * se,
               "4 sigma, stderr " + num(se)});
    };

    const Domain disc = Domain::ball({0.0, 0.0}, 1.0);
    {
        // Exit time and level <= 2 signature share the same paths.
        const auto names = tensor_component_names(2, 2);
        std::vector<std::string> comps = {"tau"};
        comps.insert(comps.end(), names.begin(), names.end());
        const std::vector<double> start = {0.0, 0.0};
        const McEstimate e = mc_reduce(opt.paths, opt.threads, comps,
                                       [&](std::size_t i, std::span<double> out) {
                                           NormalSource rng(substream_seed(opt.seed, i));
                                           const ExitPath ep = simulate_exit_path(disc, start, opt.step, rng);
                                           out[0] = ep.tau;
                                           const TruncatedTensor s = polyline_signature(ep.path, 2);
                                           std::copy(s.raw().begin(), s.raw().end(), out.begin() + 1);
                                       });
        within("disc z=0 E[tau] vs 1/2", e.mean_of("tau"), e.std_error_of("tau"), 0.5);
        r.near("disc z=0 level 0", e.mean[1], 1.0, 0.0);
        within("disc z=0 word 1", e.mean_of("1"), e.std_error_of("1"), 0.0);
        within("disc z=0 word 2", e.mean_of("2"), e.std_error_of("2"), 0.0);
        within("disc z=0 word 1.1 vs 1/4", e.mean_of("1.1"), e.std_error_of("1.1"), 0.25);
        within("disc z=0 word 2.2 vs 1/4", e.mean_of("2.2"), e.std_error_of("2.2"), 0.25);
        within("disc z=0 word 1.2 vs 0", e.mean_of("1.2"), e.std_error_of("1.2"), 0.0);
        within("disc z=0 word 2.1 vs 0", e.mean_of("2.1"), e.std_error_of("2.1"), 0.0);
    }
    {
        const MaskedGrid g(disc, 0.02);
        const Cascade c = solve_cascade(g, 2, PdeConfig{});
        const double z[2] = {0.0, 0.0};
        r.near("PDE level-2 word 1.1 at centre vs 1/4", field_value_at(g, c.levels[2], 0, z), 0.25, 1e-3);
        r.near("PDE level-2 word 2.2 at centre vs 1/4", field_value_at(g, c.levels[2], 3, z), 0.25, 1e-3);
    }
    for (int d : {2, 3}) {
        McConfig cfg;
        cfg.seed = opt.seed + static_cast<std::uint64_t>(d);
        cfg.paths = opt.paths;
        cfg.step = opt.step;
        cfg.threads = opt.threads;
        cfg.lambda = 1.0;
        cfg.start.assign(static_cast<std::size_t>(d), 0.0);
        cfg.start[0] = 0.5;
        const Domain ball = Domain::ball(std::vector<double>(static_cast<std::size_t>(d), 0.0), 1.0);
        const McEstimate e = mc_development(ball, cfg);
        const std::string last = "h" + std::to_string(d + 1);
        within(dtag(d) + " lambda=1 r=0.5 " + last + " vs closed form", e.mean_of(last),
               e.std_error_of(last), hd1_closed_form(0.5, 1.0, d));
        within(dtag(d) + " lambda=1 r=0.5 h1 vs closed form", e.mean_of("h1"), e.std_error_of("h1"),
               h1_closed_form(0.5, 1.0, d));
        for (int c = 2; c <= d; ++c) {
            const std::string name = "h" + std::to_string(c);
            within(dtag(d) + " sparseness " + name + " vs 0", e.mean_of(name), e.std_error_of(name), 0.0);
        }
    }
    return r;
}

}  // namespace sighyp
