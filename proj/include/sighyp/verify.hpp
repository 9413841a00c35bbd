#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "sighyp/interval.hpp"

namespace sighyp {

// One asserted or informational comparison.
struct Check {
    std::string id;
    double value = 0.0;
    double reference = 0.0;
    std::string relation;  // "~=", "<", ">", "<=", ">=", "info"
    double tolerance = 0.0;
    bool pass = true;
    std::string note;
};

struct Report {
    std::string title;
    std::vector<Check> checks;

    bool pass() const;
    void add(Check c);
    // |value - reference| <= tol.
    void near(std::string id, double value, double reference, double tol, std::string note = {});
    void less(std::string id, double value, double bound, std::string note = {});
    void greater(std::string id, double value, double bound, std::string note = {});
    void flag(std::string id, bool ok, std::string note = {});
    void info(std::string id, double value, std::string note = {});
    void append(const Report& other);
};

void write_report_text(std::ostream& os, const Report& r);
void write_report_csv(std::ostream& os, const Report& r);

Report reproduce_table1();
Report reproduce_table2();
Report reproduce_table4();
Report verify_2d_lemma();

struct RootBracket {
    int d = 0;
    double lo = 0.0, hi = 0.0;
    CertInterval theta_lo, theta_hi;
    double root = 0.0;
    double width = 0.0;
    int uncertified_steps = 0;  // midpoints decided by point evaluation
    bool certified() const;
};
RootBracket bracket_theta_root(int d, double a = 2.5, double b = 3.0, double width = 1e-8);
Report verify_brackets();

Report blowup_scan(int d, double eps = 1.0, double p = 0.0, double q = 1.0,
                   const std::vector<double>& deltas = {1e-2, 1e-3, 1e-4});
Report verify_blowup();

// Residuals and boundary values of the ball, 2-D ansatz and d = 9 solutions.
Report verify_closed_forms();

// Everything above; deterministic and free of Monte Carlo.
Report verify_all();

struct CrosscheckOptions {
    std::uint64_t seed = 20240611;
    std::size_t paths = 100000;
    double step = 1e-4;
    int threads = 0;
};
Report mc_crosscheck_suite(const CrosscheckOptions& opt);

}  // namespace sighyp
