#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "sighyp/domain.hpp"
#include "sighyp/stopped_bm.hpp"

namespace sighyp {

struct PdeConfig {
    double h = 0.02;
    double tol = 1e-10;
    int max_iter = 5000;

    static PdeConfig from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
};

// Node-centred grid over a 2-D domain. Interior nodes whose stencil arm
// crosses the boundary carry the crossing fraction of that arm.
class MaskedGrid {
public:
    enum class Cell : std::uint8_t { Exterior, Interior, Boundary };
    // Arms in the order +x, -x, +y, -y.
    static constexpr int kArms = 4;

    MaskedGrid(const Domain& domain, double h);

    int nx() const { return nx_; }
    int ny() const { return ny_; }
    double h() const { return h_; }
    double x(int ix) const { return (ix0_ + ix) * h_; }
    double y(int iy) const { return (iy0_ + iy) * h_; }
    Cell cell(int ix, int iy) const { return cells_[node(ix, iy)]; }
    // Index of the unknown at (ix, iy), or -1 outside.
    int unknown(int ix, int iy) const { return unknown_[node(ix, iy)]; }
    std::size_t unknowns() const { return nodes_.size(); }
    std::array<int, 2> unknown_node(std::size_t u) const { return nodes_[u]; }
    // Arm length of unknown u in units of h, in (0, 1].
    double arm(std::size_t u, int a) const { return arms_[u][a]; }
    // Boundary point on arm a of unknown u (equals the neighbour node when uncut).
    std::array<double, 2> arm_point(std::size_t u, int a) const;
    const Domain& domain() const { return domain_; }

private:
    std::size_t node(int ix, int iy) const
    {
        return static_cast<std::size_t>(iy) * static_cast<std::size_t>(nx_) +
               static_cast<std::size_t>(ix);
    }

    Domain domain_;
    double h_;
    int nx_ = 0, ny_ = 0;
    long ix0_ = 0, iy0_ = 0;
    std::vector<Cell> cells_;
    std::vector<int> unknown_;
    std::vector<std::array<int, 2>> nodes_;
    std::vector<std::array<double, kArms>> arms_;
};

// Level-n coefficients f_w at every unknown, words in lexicographic order.
struct LevelField {
    int level = 0;
    double boundary_value = 0.0;  // 1 at level 0, 0 otherwise
    std::vector<std::vector<double>> words;

    double sup_norm() const;
};

// Solves Delta f_w = -2 d_{w1} f_{w2..wn} - [w1 == w2] f_{w3..wn} with zero
// boundary data for every word of length n >= 2.
LevelField solve_level(const MaskedGrid& grid, int n, const LevelField& prev1,
                       const LevelField& prev2, const PdeConfig& cfg);

struct Cascade {
    std::vector<LevelField> levels;
    std::vector<double> sup_norms;
};
Cascade solve_cascade(const MaskedGrid& grid, int N, const PdeConfig& cfg);

// Bilinear interpolation; nodes outside the domain contribute the boundary value.
double field_value_at(const MaskedGrid& grid, const LevelField& f, std::size_t word,
                      std::span<const double> z);

struct PdePointValues {
    std::vector<std::string> components;
    std::vector<double> value;
    std::vector<double> grid_error;  // |f_h - f_2h| / 3
};
PdePointValues pde_point_values(const Domain& domain, int N, std::span<const double> z,
                                const PdeConfig& cfg);

struct CompareRow {
    std::string word;
    double mc = 0.0, stderr_mc = 0.0, pde = 0.0, grid_error = 0.0, score = 0.0;
    bool flagged = false;
};
struct CompareReport {
    std::vector<CompareRow> rows;
    bool all_clear() const;
};
// score = |mc - pde| / max(stderr, grid error); flagged above 5.
CompareReport compare_mc_pde(const Domain& domain, int N, const McConfig& mc,
                             const PdeConfig& pde);

void write_field_csv(std::ostream& os, const MaskedGrid& grid, const Cascade& c);
void write_compare_csv(std::ostream& os, const CompareReport& r);

}  // namespace sighyp
