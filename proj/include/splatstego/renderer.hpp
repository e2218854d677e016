#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "splatstego/image.hpp"
#include "splatstego/scene.hpp"

namespace splatstego {

/// Pinhole camera. rotation is world-to-camera, row-major; camera space is
/// +z forward. Pixel (x, y) samples the image plane at integer coordinates.
struct Camera {
    std::array<double, 9> rotation{1, 0, 0, 0, 1, 0, 0, 0, 1};
    std::array<double, 3> translation{0, 0, 0};
    double fx = 1, fy = 1, cx = 0, cy = 0;
    int width = 0, height = 0;

    std::array<double, 3> center() const;  // -R^T t
};

/// Text format: 9 rotation entries, 3 translation entries, fx fy cx cy,
/// width height; whitespace separated.
Camera load_camera_file(const std::string& path);
void save_camera_file(const Camera& cam, const std::string& path);

/// Identity rotation, eye at z = -2.5 looking toward +z, fx = fy = 2*width.
/// Frames synthetic content in [-0.35, 0.35]^3.
Camera default_camera(int width, int height);

/// 3D covariance R S S^T R^T from an unnormalized (w,x,y,z) quaternion and
/// activated scales; packed symmetric (xx, xy, xz, yy, yz, zz).
std::array<double, 6> covariance3d(const float* quat_wxyz, const float* scale);

/// Screen-space 2x2 covariance (a, b, c) for [[a, b], [b, c]] via the local
/// affine approximation, plus a 0.3 low-pass on the diagonal.
std::array<double, 3> project_covariance(const std::array<double, 6>& cov3d,
                                         const std::array<double, 9>& world_to_cam, double fx,
                                         double fy, const std::array<double, 3>& p_cam);

/// All 16 real SH basis values (signs included) for a unit direction.
std::array<double, 16> sh_basis(const std::array<double, 3>& dir);

/// max(sum_j c_j Y_j(dir) + 0.5, 0) per channel, orders above max_order
/// dropped.
std::array<double, 3> eval_color(const ShBlock& sh, const std::array<double, 3>& dir,
                                 int max_order = 3);

struct RenderStats {
    std::size_t culled = 0;      // behind or too close to the camera
    std::size_t degenerate = 0;  // projected covariance not positive definite
    std::size_t drawn = 0;
};

struct RenderOptions {
    std::array<double, 3> background{0, 0, 0};
    int max_sh_order = 3;
    // Optional per-primitive accumulated blend weight (sum of alpha * T over
    // pixels); sized and zeroed by render when set.
    std::vector<double>* splat_weights = nullptr;
};

/// Depth-sorted front-to-back alpha compositing with per-splat view-dependent
/// color; per-pixel transmittance terminates below 1e-4, alpha is clamped to
/// 0.99 and contributions below 1/255 are skipped.
ImageBuffer render(const GaussianScene& scene, const Camera& cam, const RenderOptions& opt = {},
                   RenderStats* stats = nullptr);

}  // namespace splatstego
