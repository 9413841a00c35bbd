#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

namespace sighyp {

// Bounded star-shaped domain given by an implicit function g: g < 0 inside,
// g = 0 on the boundary. Wrappers act through an affine change of variables
// x -> A (x - shift) with A orthogonal.
class Domain {
public:
    enum class Kind { Ball, Ellipsoid, Rotated, Reflected, Translated };

    static Domain ball(std::vector<double> center, double radius);
    static Domain ellipsoid(std::vector<double> semi_axes, std::vector<double> center = {});
    static Domain rotated(const Domain& base, const Eigen::MatrixXd& R);
    // Negates coordinates 2..d.
    static Domain reflected(const Domain& base);
    static Domain translated(const Domain& base, std::vector<double> shift);

    Kind kind() const { return kind_; }
    int dim() const { return d_; }

    double level_fn(std::span<const double> x) const;
    bool inside(std::span<const double> x) const { return level_fn(x) < 0.0; }
    // Euclidean distance to the boundary (first-order estimate for ellipsoids).
    double boundary_distance(std::span<const double> x) const;
    // Point where the ray from the domain centre through x meets the boundary.
    std::vector<double> radial_projection(std::span<const double> x) const;
    // Axis-aligned box {lo, hi} containing the domain.
    std::pair<std::vector<double>, std::vector<double>> bounding_box() const;

    // Radius r such that B(0, r) lies in every rotation R(Omega), R in SO(d);
    // empty when not known in closed form.
    std::optional<double> rotation_inscribed_radius() const;

    nlohmann::json to_json() const;
    static Domain from_json(const nlohmann::json& j);

private:
    Domain() = default;
    // Base-frame coordinates: y = A (x - shift), composed over wrappers.
    void to_base(std::span<const double> x, std::span<double> y) const;
    void from_base(std::span<const double> y, std::span<double> x) const;

    Kind kind_ = Kind::Ball;
    int d_ = 0;
    std::vector<double> center_;
    double radius_ = 1.0;
    std::vector<double> axes_;
    Eigen::MatrixXd A_;
    std::vector<double> shift_;
    std::shared_ptr<const Domain> base_;
};

}  // namespace sighyp
