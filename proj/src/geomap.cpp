#include "fusereid/geomap.hpp"

#include <cmath>

#include <Eigen/Dense>

#include "fusereid/errors.hpp"

namespace fusereid {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kEarthRadiusM = 6378137.0;  // WGS84 equatorial
constexpr double kDetTolerance = 1e-12;

// Isotropic normalization: centroid to origin, mean distance sqrt(2).
// Standard conditioning step for the direct linear transform.
Eigen::Matrix3d normalizing_transform(const std::vector<Eigen::Vector2d>& pts) {
    Eigen::Vector2d centroid = Eigen::Vector2d::Zero();
    for (const auto& p : pts) centroid += p;
    centroid /= static_cast<double>(pts.size());

    double mean_dist = 0.0;
    for (const auto& p : pts) mean_dist += (p - centroid).norm();
    mean_dist /= static_cast<double>(pts.size());

    const double scale = mean_dist > 0.0 ? std::sqrt(2.0) / mean_dist : 1.0;
    Eigen::Matrix3d t = Eigen::Matrix3d::Identity();
    t(0, 0) = scale;
    t(1, 1) = scale;
    t(0, 2) = -scale * centroid.x();
    t(1, 2) = -scale * centroid.y();
    return t;
}

}  // namespace

PixelToWorldMap::PixelToWorldMap(const std::array<double, 9>& coefficients) : h_(coefficients) {
    if (std::abs(h_[8]) < kDetTolerance) {
        throw DegenerateConfiguration("homography scale coefficient is zero");
    }
    for (double& v : h_) v /= h_[8];

    const double det = h_[0] * (h_[4] * h_[8] - h_[5] * h_[7]) -
                       h_[1] * (h_[3] * h_[8] - h_[5] * h_[6]) +
                       h_[2] * (h_[3] * h_[7] - h_[4] * h_[6]);
    if (std::abs(det) < kDetTolerance) {
        throw DegenerateConfiguration("homography is not invertible");
    }
}

PixelToWorldMap PixelToWorldMap::identity() {
    return PixelToWorldMap({1, 0, 0, 0, 1, 0, 0, 0, 1});
}

PixelToWorldMap estimate_map(std::span<const ControlPoint> controls) {
    if (controls.size() < 4) {
        throw DegenerateConfiguration("homography estimation needs at least 4 control points");
    }

    std::vector<Eigen::Vector2d> pix, wld;
    pix.reserve(controls.size());
    wld.reserve(controls.size());
    for (const auto& c : controls) {
        pix.emplace_back(c.pixel.u, c.pixel.v);
        wld.emplace_back(c.world.x, c.world.y);
    }
    const Eigen::Matrix3d tp = normalizing_transform(pix);
    const Eigen::Matrix3d tw = normalizing_transform(wld);

    Eigen::MatrixXd a(2 * controls.size(), 9);
    for (std::size_t i = 0; i < controls.size(); ++i) {
        const Eigen::Vector3d p = tp * Eigen::Vector3d(pix[i].x(), pix[i].y(), 1.0);
        const Eigen::Vector3d w = tw * Eigen::Vector3d(wld[i].x(), wld[i].y(), 1.0);
        const double u = p.x(), v = p.y();
        const double x = w.x(), y = w.y();
        a.row(2 * i) << u, v, 1, 0, 0, 0, -x * u, -x * v, -x;
        a.row(2 * i + 1) << 0, 0, 0, u, v, 1, -y * u, -y * v, -y;
    }

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
    const auto& singular = svd.singularValues();
    // A unique solution needs rank 8: the second-smallest singular value
    // must be clearly nonzero. Collinear configurations fail here.
    if (singular(7) < 1e-9 * singular(0)) {
        throw DegenerateConfiguration("control point configuration is rank-deficient");
    }

    const Eigen::VectorXd h = svd.matrixV().col(8);
    Eigen::Matrix3d hn;
    hn << h(0), h(1), h(2), h(3), h(4), h(5), h(6), h(7), h(8);

    const Eigen::Matrix3d denorm = tw.inverse() * hn * tp;
    std::array<double, 9> coeffs{};
    for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) coeffs[static_cast<std::size_t>(3 * r + c)] = denorm(r, c);
    }
    return PixelToWorldMap(coeffs);
}

PixelPoint foot_point(const BoundingBox& box) {
    return {box.left + box.width / 2.0, box.top + box.height};
}

WorldPoint project(const PixelToWorldMap& map, const PixelPoint& pixel) {
    const auto& h = map.coefficients();
    const double scale = h[6] * pixel.u + h[7] * pixel.v + h[8];
    if (std::abs(scale) < kDetTolerance) {
        throw PointAtInfinity("pixel projects to the plane at infinity");
    }
    return {(h[0] * pixel.u + h[1] * pixel.v + h[2]) / scale,
            (h[3] * pixel.u + h[4] * pixel.v + h[5]) / scale};
}

VisualTrajectory kalman_smooth(const VisualTrajectory& raw, double process_noise,
                               double measurement_noise) {
    if (!(process_noise > 0.0) || !(measurement_noise > 0.0)) {
        throw InvalidConfig("kalman_smooth: noise parameters must be positive");
    }
    VisualTrajectory out;
    out.points.reserve(raw.points.size());
    if (raw.points.empty()) return out;

    const double r2 = measurement_noise * measurement_noise;
    const double q2 = process_noise * process_noise;

    using Vec4 = Eigen::Vector4d;
    using Mat4 = Eigen::Matrix4d;
    using Mat24 = Eigen::Matrix<double, 2, 4>;

    Mat24 obs = Mat24::Zero();
    obs(0, 0) = 1.0;
    obs(1, 1) = 1.0;
    const Eigen::Matrix2d meas_cov = Eigen::Matrix2d::Identity() * r2;

    // State (x, y, vx, vy), anchored at the first measurement with zero
    // velocity and a wide velocity prior so the first steps can lock onto
    // the true motion quickly.
    Vec4 state;
    state << raw.points[0].pos.x, raw.points[0].pos.y, 0.0, 0.0;
    Mat4 cov = Mat4::Zero();
    cov(0, 0) = r2;
    cov(1, 1) = r2;
    cov(2, 2) = 100.0;
    cov(3, 3) = 100.0;

    out.points.push_back(raw.points[0]);

    for (std::size_t i = 1; i < raw.points.size(); ++i) {
        const double dt =
            static_cast<double>(raw.points[i].time.millis - raw.points[i - 1].time.millis) /
            1000.0;

        Mat4 f = Mat4::Identity();
        f(0, 2) = dt;
        f(1, 3) = dt;

        // Discrete white-noise acceleration model.
        const double dt2 = dt * dt;
        const double dt3 = dt2 * dt;
        const double dt4 = dt3 * dt;
        Mat4 pnoise = Mat4::Zero();
        pnoise(0, 0) = pnoise(1, 1) = q2 * dt4 / 4.0;
        pnoise(2, 2) = pnoise(3, 3) = q2 * dt2;
        pnoise(0, 2) = pnoise(2, 0) = q2 * dt3 / 2.0;
        pnoise(1, 3) = pnoise(3, 1) = q2 * dt3 / 2.0;

        state = f * state;
        cov = f * cov * f.transpose() + pnoise;

        const Eigen::Vector2d z(raw.points[i].pos.x, raw.points[i].pos.y);
        const Eigen::Vector2d innovation = z - obs * state;
        const Eigen::Matrix2d s = obs * cov * obs.transpose() + meas_cov;
        const Eigen::Matrix<double, 4, 2> gain = cov * obs.transpose() * s.inverse();
        state += gain * innovation;
        cov = (Mat4::Identity() - gain * obs) * cov;

        out.points.push_back({raw.points[i].time, {state(0), state(1)}});
    }
    return out;
}

VisualTrajectory build_visual_trajectory(std::span<const BoundingBox> boxes,
                                         const PixelToWorldMap& map,
                                         const KalmanParams& params) {
    if (boxes.empty()) {
        throw InvalidConfig("build_visual_trajectory: no boxes");
    }
    VisualTrajectory raw;
    raw.points.reserve(boxes.size());
    for (const auto& box : boxes) {
        if (!raw.points.empty() && box.time <= raw.points.back().time) {
            throw InvalidConfig("build_visual_trajectory: timestamps must strictly increase");
        }
        raw.points.push_back({box.time, project(map, foot_point(box))});
    }
    return kalman_smooth(raw, params.process_noise, params.measurement_noise);
}

GeoReference::GeoReference(const GeoPoint& origin)
    : origin_(origin), cos_lat0_(std::cos(origin.lat * kPi / 180.0)) {}

GeoReference GeoReference::from_centroid(std::span<const GeoPoint> points) {
    GeoPoint c;
    for (const auto& p : points) {
        c.lat += p.lat;
        c.lon += p.lon;
    }
    if (!points.empty()) {
        c.lat /= static_cast<double>(points.size());
        c.lon /= static_cast<double>(points.size());
    }
    return GeoReference(c);
}

WorldPoint GeoReference::to_local(const GeoPoint& p) const {
    return {kEarthRadiusM * cos_lat0_ * (p.lon - origin_.lon) * kPi / 180.0,
            kEarthRadiusM * (p.lat - origin_.lat) * kPi / 180.0};
}

}  // namespace fusereid
