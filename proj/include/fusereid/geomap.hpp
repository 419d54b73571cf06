#pragma once

#include <array>
#include <span>
#include <vector>

#include "fusereid/model.hpp"

namespace fusereid {

struct PixelPoint {
    double u{0.0};
    double v{0.0};
};

/// Ground-truthed correspondence between an image pixel and its world
/// position, surveyed once per camera.
struct ControlPoint {
    PixelPoint pixel;
    WorldPoint world;
};

/// Planar homography from pixel coordinates to the local world frame,
/// stored row-major with the bottom-right coefficient normalized to 1.
class PixelToWorldMap {
public:
    explicit PixelToWorldMap(const std::array<double, 9>& coefficients);

    static PixelToWorldMap identity();

    const std::array<double, 9>& coefficients() const { return h_; }

private:
    std::array<double, 9> h_;
};

struct BoundingBox {
    double left{0.0};
    double top{0.0};
    double width{0.0};
    double height{0.0};
    Timestamp time;
};

/// Kalman smoothing parameters for the constant-velocity model.
/// Defaults suit pedestrian walks measured via ground-plane projection.
struct KalmanParams {
    double process_noise = 1.0;      // acceleration white-noise std, m/s^2
    double measurement_noise = 2.0;  // per-axis position std, m
};

/// Fits the pixel-to-world homography to >= 4 control points by the
/// direct linear transform with Hartley normalization. Throws
/// DegenerateConfiguration when the system is rank-deficient (too few
/// points, or all-but-collinear configurations).
PixelToWorldMap estimate_map(std::span<const ControlPoint> controls);

/// Bottom-center of a pedestrian bounding box, i.e. the foot position.
PixelPoint foot_point(const BoundingBox& box);

/// Applies the homography. Throws PointAtInfinity when the homogeneous
/// scale factor vanishes.
WorldPoint project(const PixelToWorldMap& map, const PixelPoint& pixel);

/// Constant-velocity Kalman filter over (x, y, vx, vy) with the step
/// length taken from the timestamps. The filter starts at the first
/// measurement with zero velocity, so the first output point equals the
/// first input point; timestamps pass through unchanged.
VisualTrajectory kalman_smooth(const VisualTrajectory& raw, double process_noise,
                               double measurement_noise);

/// foot_point + project + kalman_smooth over a detection track.
/// Box timestamps must be strictly increasing.
VisualTrajectory build_visual_trajectory(std::span<const BoundingBox> boxes,
                                         const PixelToWorldMap& map,
                                         const KalmanParams& params = {});

/// Geodetic position in degrees, as recorded by survey or GPS tooling.
struct GeoPoint {
    double lat{0.0};
    double lon{0.0};
};

/// Converts latitude/longitude to local east-north meters with an
/// equirectangular approximation about a fixed origin. Over a sub-kilometer
/// scene the approximation error is below a centimeter.
class GeoReference {
public:
    explicit GeoReference(const GeoPoint& origin);

    static GeoReference from_centroid(std::span<const GeoPoint> points);

    WorldPoint to_local(const GeoPoint& p) const;

    const GeoPoint& origin() const { return origin_; }

private:
    GeoPoint origin_;
    double cos_lat0_;
};

}  // namespace fusereid
