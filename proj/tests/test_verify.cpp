#include <doctest.h>

#include <sstream>

#include "sighyp/verify.hpp"

using namespace sighyp;

namespace {

const Check& find(const Report& r, const std::string& id)
{
    for (const auto& c : r.checks)
        if (c.id == id) return c;
    FAIL("missing check " << id);
    return r.checks.front();
}

}  // namespace

TEST_CASE("report bookkeeping")
{
    Report r{"demo", {}};
    r.near("a", 1.0, 1.0 + 1e-6, 1e-5);
    r.less("b", -1.0, 0.0);
    r.info("c", 42.0);
    CHECK(r.pass());
    r.greater("d", 0.0, 1.0);
    CHECK_FALSE(r.pass());
    std::ostringstream text, csv;
    write_report_text(text, r);
    write_report_csv(csv, r);
    CHECK(text.str().find("RESULT FAIL") != std::string::npos);
    CHECK(csv.str().rfind("check,value,relation,reference,tolerance,pass,note\n", 0) == 0);
    Report all{"all", {}};
    all.append(r);
    CHECK(all.checks.front().id == "demo: a");
}

TEST_CASE("published tables are reproduced")
{
    const Report t1 = reproduce_table1();
    CHECK(t1.pass());
    CHECK(find(t1, "d=5 [Theta+Err](2.5)").value == doctest::Approx(-1.315936).epsilon(1e-5));
    CHECK(find(t1, "d=5 [Theta-Err](3)").value == doctest::Approx(6.921044).epsilon(1e-5));
    CHECK(find(t1, "d=3 [Theta+Err](2.5)").value <= -2.072008 + 1e-5);
    CHECK(find(t1, "d=8 [Theta-Err](3)").value >= 1.115177 - 1e-5);

    const Report t2 = reproduce_table2();
    CHECK(t2.pass());
    CHECK(find(t2, "d=7 N(2.5)").value == doctest::Approx(-26.851665).epsilon(1e-6));
    CHECK(find(t2, "d=7 Err").value == doctest::Approx(12.270795).epsilon(1e-6));

    const Report t4 = reproduce_table4();
    CHECK(t4.pass());
    CHECK(find(t4, "d=6 N(2.5)").value == doctest::Approx(-5.465016).epsilon(1e-6));
    CHECK(find(t4, "d=6 Err").value == doctest::Approx(0.811930).epsilon(1e-6));
    for (int d = 3; d <= 8; ++d) {
        const std::string tag = "d=" + std::to_string(d);
        CHECK(find(t4, tag + " certified inf N2 on [2.5,3]").pass);
        CHECK(find(t4, tag + " certified inf (|N1|-|N2|) on [2.5,3]").pass);
        CHECK(find(t2, tag + " certified sup N on [2.5,3]").pass);
    }
}

TEST_CASE("two-dimensional lemma constants")
{
    const Report r = verify_2d_lemma();
    CHECK(find(r, "remainder sup max(|R0|,|R1|) on [0,3] <= 0.0006367").pass);
    CHECK(find(r, "E*(3|zeta|, 6, 1) <= 0.0006367").pass);
    CHECK(find(r, "combined (|alpha|+1) * remainder sup <= 0.0011395").pass);
    CHECK(find(r, "C0").value == doctest::Approx(-0.11915012).epsilon(1e-7));
    CHECK(find(r, "C0").pass);
    CHECK(find(r, "C4").pass);
    CHECK(find(r, "tail sum_{i>=4} |C_i|/2^i <= 0.00036").value == doctest::Approx(0.000276).epsilon(1e-3));
    CHECK(find(r, "final C0 + tail + combined").pass);
    CHECK(find(r, "final -0.1181564882 + 0.00038 + 0.0011395").pass);
    CHECK(find(r, "certified sup Im{conj(a)J1(mu conj(zeta))} on [2.5,3]").pass);
    CHECK(find(r, "certified inf Im{J0(mu conj(zeta))} on [2.5,3]").pass);
    // The published T(2.5) is not reproduced by the stated truncation.
    CHECK_FALSE(find(r, "T(2.5) = -0.1181564882").pass);
}

TEST_CASE("root brackets")
{
    for (int d = 2; d <= 8; ++d) {
        const RootBracket b = bracket_theta_root(d);
        CHECK(b.certified());
        CHECK(b.lo > 2.5);
        CHECK(b.hi < 3.0);
        CHECK(b.width <= 1e-8);
        CHECK(b.uncertified_steps == 0);
        const RootBracket fine = bracket_theta_root(d, 2.5, 3.0, 1e-9);
        CHECK(fine.lo >= b.lo);
        CHECK(fine.hi <= b.hi);
    }
    CHECK(bracket_theta_root(2).root == doctest::Approx(2.823887).epsilon(1e-6));
    CHECK_THROWS(bracket_theta_root(3, 1.0, 2.0));
}

TEST_CASE("blow-up near the root")
{
    for (int d : {2, 8}) {
        const Report r = blowup_scan(d);
        CHECK(r.pass());
        CHECK(find(r, "|hd1(0)| at smallest delta").value > 1e3);
    }
}

TEST_CASE("closed-form residual report")
{
    CHECK(verify_closed_forms().pass());
}

TEST_CASE("stochastic crosscheck at a small budget")
{
    for (std::uint64_t seed : {1u, 2u}) {
        CrosscheckOptions o;
        o.seed = seed;
        o.paths = 1000;
        o.step = 1e-3;
        o.threads = 1;
        const Report r = mc_crosscheck_suite(o);
        CHECK(r.pass());
    }
}
