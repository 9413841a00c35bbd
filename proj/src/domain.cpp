#include "sighyp/domain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace sighyp {

namespace {

double norm(std::span<const double> x)
{
    double s = 0.0;
    for (double v : x) s += v * v;
    return std::sqrt(s);
}

void check_finite(const std::vector<double>& v, const char* what)
{
    for (double x : v)
        if (!std::isfinite(x)) throw std::invalid_argument(std::string(what) + " must be finite");
}

}  // namespace

Domain Domain::ball(std::vector<double> center, double radius)
{
    if (center.empty()) throw std::invalid_argument("ball centre must have dimension >= 1");
    if (!(radius > 0.0) || !std::isfinite(radius))
        throw std::invalid_argument("ball radius must be positive");
    check_finite(center, "ball centre");
    Domain D;
    D.kind_ = Kind::Ball;
    D.d_ = static_cast<int>(center.size());
    D.center_ = std::move(center);
    D.radius_ = radius;
    return D;
}

Domain Domain::ellipsoid(std::vector<double> semi_axes, std::vector<double> center)
{
    if (semi_axes.empty()) throw std::invalid_argument("ellipsoid needs semi-axes");
    for (double a : semi_axes)
        if (!(a > 0.0) || !std::isfinite(a))
            throw std::invalid_argument("ellipsoid semi-axes must be positive");
    if (center.empty()) center.assign(semi_axes.size(), 0.0);
    if (center.size() != semi_axes.size())
        throw std::invalid_argument("ellipsoid centre/semi-axes dimension mismatch");
    check_finite(center, "ellipsoid centre");
    Domain D;
    D.kind_ = Kind::Ellipsoid;
    D.d_ = static_cast<int>(semi_axes.size());
    D.axes_ = std::move(semi_axes);
    D.center_ = std::move(center);
    return D;
}

Domain Domain::rotated(const Domain& base, const Eigen::MatrixXd& R)
{
    const int d = base.dim();
    if (R.rows() != d || R.cols() != d) throw std::invalid_argument("rotation dimension mismatch");
    const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(d, d);
    if ((R.transpose() * R - I).cwiseAbs().maxCoeff() > 1e-10 || std::abs(R.determinant() - 1.0) > 1e-10)
        throw std::invalid_argument("rotation must be in SO(d)");
    Domain D;
    D.kind_ = Kind::Rotated;
    D.d_ = d;
    D.A_ = R.transpose();
    D.shift_.assign(d, 0.0);
    D.base_ = std::make_shared<const Domain>(base);
    return D;
}

Domain Domain::reflected(const Domain& base)
{
    const int d = base.dim();
    Domain D;
    D.kind_ = Kind::Reflected;
    D.d_ = d;
    D.A_ = Eigen::MatrixXd::Identity(d, d);
    for (int i = 1; i < d; ++i) D.A_(i, i) = -1.0;
    D.shift_.assign(d, 0.0);
    D.base_ = std::make_shared<const Domain>(base);
    return D;
}

Domain Domain::translated(const Domain& base, std::vector<double> shift)
{
    if (static_cast<int>(shift.size()) != base.dim())
        throw std::invalid_argument("translation dimension mismatch");
    check_finite(shift, "translation");
    Domain D;
    D.kind_ = Kind::Translated;
    D.d_ = base.dim();
    D.A_ = Eigen::MatrixXd::Identity(D.d_, D.d_);
    D.shift_ = std::move(shift);
    D.base_ = std::make_shared<const Domain>(base);
    return D;
}

void Domain::to_base(std::span<const double> x, std::span<double> y) const
{
    for (int i = 0; i < d_; ++i) {
        double s = 0.0;
        for (int j = 0; j < d_; ++j) s += A_(i, j) * (x[j] - shift_[j]);
        y[i] = s;
    }
}

void Domain::from_base(std::span<const double> y, std::span<double> x) const
{
    for (int i = 0; i < d_; ++i) {
        double s = shift_[i];
        for (int j = 0; j < d_; ++j) s += A_(j, i) * y[j];
        x[i] = s;
    }
}

double Domain::level_fn(std::span<const double> x) const
{
    switch (kind_) {
    case Kind::Ball: {
        double s = 0.0;
        for (int i = 0; i < d_; ++i) {
            const double t = x[i] - center_[i];
            s += t * t;
        }
        return s / (radius_ * radius_) - 1.0;
    }
    case Kind::Ellipsoid: {
        double s = 0.0;
        for (int i = 0; i < d_; ++i) {
            const double t = (x[i] - center_[i]) / axes_[i];
            s += t * t;
        }
        return s - 1.0;
    }
    default: {
        double buf[16];
        std::vector<double> heap;
        std::span<double> y;
        if (d_ <= 16) {
            y = std::span<double>(buf, static_cast<std::size_t>(d_));
        } else {
            heap.resize(d_);
            y = heap;
        }
        to_base(x, y);
        return base_->level_fn(y);
    }
    }
}

double Domain::boundary_distance(std::span<const double> x) const
{
    switch (kind_) {
    case Kind::Ball: {
        double s = 0.0;
        for (int i = 0; i < d_; ++i) {
            const double t = x[i] - center_[i];
            s += t * t;
        }
        return radius_ - std::sqrt(s);
    }
    case Kind::Ellipsoid: {
        double g = -1.0, grad2 = 0.0;
        for (int i = 0; i < d_; ++i) {
            const double t = (x[i] - center_[i]) / axes_[i];
            g += t * t;
            const double gi = 2.0 * t / axes_[i];
            grad2 += gi * gi;
        }
        if (grad2 == 0.0) {
            double m = axes_[0];
            for (double a : axes_) m = std::min(m, a);
            return m;
        }
        return -g / std::sqrt(grad2);
    }
    default: {
        double buf[16];
        std::vector<double> heap;
        std::span<double> y;
        if (d_ <= 16) {
            y = std::span<double>(buf, static_cast<std::size_t>(d_));
        } else {
            heap.resize(d_);
            y = heap;
        }
        to_base(x, y);
        return base_->boundary_distance(y);
    }
    }
}

std::vector<double> Domain::radial_projection(std::span<const double> x) const
{
    std::vector<double> out(d_);
    switch (kind_) {
    case Kind::Ball:
    case Kind::Ellipsoid: {
        std::vector<double> u(d_);
        for (int i = 0; i < d_; ++i) u[i] = x[i] - center_[i];
        double scale;
        if (kind_ == Kind::Ball) {
            const double n = norm(u);
            if (n == 0.0) {
                u[0] = 1.0;
                scale = radius_;
            } else {
                scale = radius_ / n;
            }
        } else {
            double q = 0.0;
            for (int i = 0; i < d_; ++i) q += (u[i] / axes_[i]) * (u[i] / axes_[i]);
            if (q == 0.0) {
                u[0] = axes_[0];
                q = 1.0;
            }
            scale = 1.0 / std::sqrt(q);
        }
        for (int i = 0; i < d_; ++i) out[i] = center_[i] + scale * u[i];
        return out;
    }
    default: {
        std::vector<double> y(d_);
        to_base(x, y);
        from_base(base_->radial_projection(y), out);
        return out;
    }
    }
}

std::pair<std::vector<double>, std::vector<double>> Domain::bounding_box() const
{
    std::vector<double> lo(d_), hi(d_);
    if (kind_ == Kind::Ball || kind_ == Kind::Ellipsoid) {
        for (int i = 0; i < d_; ++i) {
            const double a = kind_ == Kind::Ball ? radius_ : axes_[i];
            lo[i] = center_[i] - a;
            hi[i] = center_[i] + a;
        }
        return {lo, hi};
    }
    const auto [blo, bhi] = base_->bounding_box();
    lo.assign(d_, std::numeric_limits<double>::infinity());
    hi.assign(d_, -std::numeric_limits<double>::infinity());
    std::vector<double> y(d_), x(d_);
    for (unsigned long mask = 0; mask < (1UL << d_); ++mask) {
        for (int i = 0; i < d_; ++i) y[i] = (mask >> i) & 1UL ? bhi[i] : blo[i];
        from_base(y, x);
        for (int i = 0; i < d_; ++i) {
            lo[i] = std::min(lo[i], x[i]);
            hi[i] = std::max(hi[i], x[i]);
        }
    }
    return {lo, hi};
}

std::optional<double> Domain::rotation_inscribed_radius() const
{
    switch (kind_) {
    case Kind::Ball: {
        const double r = radius_ - norm(center_);
        return r > 0.0 ? std::optional<double>(r) : std::nullopt;
    }
    case Kind::Ellipsoid: {
        double m = axes_[0];
        for (double a : axes_) m = std::min(m, a);
        const double r = m - norm(center_);
        return r > 0.0 ? std::optional<double>(r) : std::nullopt;
    }
    case Kind::Rotated:
    case Kind::Reflected:
        return base_->rotation_inscribed_radius();
    case Kind::Translated: {
        auto r = base_->rotation_inscribed_radius();
        if (!r) return std::nullopt;
        const double s = *r - norm(shift_);
        return s > 0.0 ? std::optional<double>(s) : std::nullopt;
    }
    }
    return std::nullopt;
}

nlohmann::json Domain::to_json() const
{
    nlohmann::json j;
    switch (kind_) {
    case Kind::Ball:
        j = {{"kind", "ball"}, {"center", center_}, {"radius", radius_}};
        break;
    case Kind::Ellipsoid:
        j = {{"kind", "ellipsoid"}, {"semi_axes", axes_}, {"center", center_}};
        break;
    case Kind::Rotated: {
        std::vector<std::vector<double>> R(d_, std::vector<double>(d_));
        for (int i = 0; i < d_; ++i)
            for (int k = 0; k < d_; ++k) R[i][k] = A_(k, i);
        j = {{"kind", "rotated"}, {"rotation", R}, {"base", base_->to_json()}};
        break;
    }
    case Kind::Reflected:
        j = {{"kind", "reflected"}, {"base", base_->to_json()}};
        break;
    case Kind::Translated:
        j = {{"kind", "translated"}, {"shift", shift_}, {"base", base_->to_json()}};
        break;
    }
    return j;
}

Domain Domain::from_json(const nlohmann::json& j)
{
    if (!j.is_object() || !j.contains("kind")) throw std::invalid_argument("domain.kind missing");
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "ball" || kind == "disc" || kind == "disk") {
        std::vector<double> c = j.at("center").get<std::vector<double>>();
        return ball(std::move(c), j.value("radius", 1.0));
    }
    if (kind == "ellipsoid" || kind == "ellipse") {
        auto axes = j.at("semi_axes").get<std::vector<double>>();
        std::vector<double> c;
        if (j.contains("center")) c = j.at("center").get<std::vector<double>>();
        return ellipsoid(std::move(axes), std::move(c));
    }
    if (kind == "rotated") {
        Domain b = from_json(j.at("base"));
        const int d = b.dim();
        Eigen::MatrixXd R(d, d);
        if (j.contains("angle")) {
            if (d != 2) throw std::invalid_argument("domain.angle only valid for d=2");
            const double a = j.at("angle").get<double>();
            R << std::cos(a), -std::sin(a), std::sin(a), std::cos(a);
        } else {
            auto rows = j.at("rotation").get<std::vector<std::vector<double>>>();
            if (static_cast<int>(rows.size()) != d)
                throw std::invalid_argument("domain.rotation must be d x d");
            for (int i = 0; i < d; ++i) {
                if (static_cast<int>(rows[i].size()) != d)
                    throw std::invalid_argument("domain.rotation must be d x d");
                for (int k = 0; k < d; ++k) R(i, k) = rows[i][k];
            }
        }
        return rotated(b, R);
    }
    if (kind == "reflected") return reflected(from_json(j.at("base")));
    if (kind == "translated")
        return translated(from_json(j.at("base")), j.at("shift").get<std::vector<double>>());
    throw std::invalid_argument("unknown domain.kind '" + kind + "'");
}

}  // namespace sighyp
