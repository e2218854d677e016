#include "splatstego/renderer.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <stdexcept>

namespace splatstego {

namespace {

constexpr double kNearClip = 0.2;
constexpr double kAlphaClamp = 0.99;
constexpr double kMinAlpha = 1.0 / 255.0;
constexpr double kMinTransmittance = 1e-4;

constexpr double kSH0 = 0.28209479177387814;
constexpr double kSH1 = 0.4886025119029199;
constexpr double kSH2[5] = {1.0925484305920792, -1.0925484305920792, 0.31539156525252005,
                            -1.0925484305920792, 0.5462742152960396};
constexpr double kSH3[7] = {-0.5900435899266435, 2.890611442640554, -0.4570457994644658,
                            0.3731763325901154, -0.4570457994644658, 1.445305721320277,
                            -0.5900435899266435};

}  // namespace

std::array<double, 3> Camera::center() const {
    const auto& r = rotation;
    const auto& t = translation;
    return {-(r[0] * t[0] + r[3] * t[1] + r[6] * t[2]),
            -(r[1] * t[0] + r[4] * t[1] + r[7] * t[2]),
            -(r[2] * t[0] + r[5] * t[1] + r[8] * t[2])};
}

Camera load_camera_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open camera file " + path);
    Camera cam;
    for (double& v : cam.rotation) in >> v;
    for (double& v : cam.translation) in >> v;
    in >> cam.fx >> cam.fy >> cam.cx >> cam.cy;
    in >> cam.width >> cam.height;
    if (!in) throw std::runtime_error("malformed camera file " + path);
    if (cam.width <= 0 || cam.height <= 0)
        throw std::runtime_error("camera file has non-positive image size: " + path);
    if (!(cam.fx > 0) || !(cam.fy > 0))
        throw std::runtime_error("camera file has non-positive focal length: " + path);
    return cam;
}

void save_camera_file(const Camera& cam, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << std::setprecision(17);
    for (int i = 0; i < 9; ++i) out << cam.rotation[i] << (i % 3 == 2 ? "\n" : " ");
    out << cam.translation[0] << " " << cam.translation[1] << " " << cam.translation[2] << "\n";
    out << cam.fx << " " << cam.fy << " " << cam.cx << " " << cam.cy << "\n";
    out << cam.width << " " << cam.height << "\n";
    if (!out) throw std::runtime_error("write failed: " + path);
}

Camera default_camera(int width, int height) {
    Camera cam;
    cam.width = width;
    cam.height = height;
    cam.translation = {0, 0, 2.5};
    cam.fx = cam.fy = 2.0 * width;
    cam.cx = width / 2.0;
    cam.cy = height / 2.0;
    return cam;
}

std::array<double, 6> covariance3d(const float* quat_wxyz, const float* scale) {
    double w = quat_wxyz[0], x = quat_wxyz[1], y = quat_wxyz[2], z = quat_wxyz[3];
    const double norm = std::sqrt(w * w + x * x + y * y + z * z);
    if (norm > 0) {
        w /= norm;
        x /= norm;
        y /= norm;
        z /= norm;
    } else {
        w = 1;
        x = y = z = 0;
    }
    const double r[9] = {1 - 2 * (y * y + z * z), 2 * (x * y - w * z),     2 * (x * z + w * y),
                         2 * (x * y + w * z),     1 - 2 * (x * x + z * z), 2 * (y * z - w * x),
                         2 * (x * z - w * y),     2 * (y * z + w * x),     1 - 2 * (x * x + y * y)};
    const double s2[3] = {static_cast<double>(scale[0]) * scale[0],
                          static_cast<double>(scale[1]) * scale[1],
                          static_cast<double>(scale[2]) * scale[2]};
    // Sigma = R diag(s^2) R^T
    std::array<double, 6> out{};
    int idx = 0;
    for (int i = 0; i < 3; ++i) {
        for (int j = i; j < 3; ++j) {
            double acc = 0;
            for (int k = 0; k < 3; ++k) acc += r[i * 3 + k] * s2[k] * r[j * 3 + k];
            out[idx++] = acc;
        }
    }
    return out;
}

std::array<double, 3> project_covariance(const std::array<double, 6>& cov3d,
                                         const std::array<double, 9>& world_to_cam, double fx,
                                         double fy, const std::array<double, 3>& p_cam) {
    const double x = p_cam[0], y = p_cam[1], z = p_cam[2];
    const double iz = 1.0 / z;
    const double iz2 = iz * iz;
    // J is the 2x3 Jacobian of the perspective projection at p_cam.
    const double j[6] = {fx * iz, 0, -fx * x * iz2, 0, fy * iz, -fy * y * iz2};

    // T = J * W (2x3)
    double tm[6];
    for (int i = 0; i < 2; ++i) {
        for (int k = 0; k < 3; ++k) {
            tm[i * 3 + k] = j[i * 3 + 0] * world_to_cam[0 * 3 + k] +
                            j[i * 3 + 1] * world_to_cam[1 * 3 + k] +
                            j[i * 3 + 2] * world_to_cam[2 * 3 + k];
        }
    }

    const double c[9] = {cov3d[0], cov3d[1], cov3d[2], cov3d[1], cov3d[3],
                         cov3d[4], cov3d[2], cov3d[4], cov3d[5]};
    double tc[6];  // T * Sigma (2x3)
    for (int i = 0; i < 2; ++i) {
        for (int k = 0; k < 3; ++k) {
            tc[i * 3 + k] = tm[i * 3 + 0] * c[0 * 3 + k] + tm[i * 3 + 1] * c[1 * 3 + k] +
                            tm[i * 3 + 2] * c[2 * 3 + k];
        }
    }
    auto dot3 = [](const double* a, const double* b) {
        return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
    };
    return {dot3(tc, tm) + 0.3, dot3(tc, tm + 3), dot3(tc + 3, tm + 3) + 0.3};
}

std::array<double, 16> sh_basis(const std::array<double, 3>& dir) {
    const double x = dir[0], y = dir[1], z = dir[2];
    const double xx = x * x, yy = y * y, zz = z * z;
    std::array<double, 16> b;
    b[0] = kSH0;
    b[1] = -kSH1 * y;
    b[2] = kSH1 * z;
    b[3] = -kSH1 * x;
    b[4] = kSH2[0] * x * y;
    b[5] = kSH2[1] * y * z;
    b[6] = kSH2[2] * (2.0 * zz - xx - yy);
    b[7] = kSH2[3] * x * z;
    b[8] = kSH2[4] * (xx - yy);
    b[9] = kSH3[0] * y * (3.0 * xx - yy);
    b[10] = kSH3[1] * x * y * z;
    b[11] = kSH3[2] * y * (4.0 * zz - xx - yy);
    b[12] = kSH3[3] * z * (2.0 * zz - 3.0 * xx - 3.0 * yy);
    b[13] = kSH3[4] * x * (4.0 * zz - xx - yy);
    b[14] = kSH3[5] * z * (xx - yy);
    b[15] = kSH3[6] * x * (xx - 3.0 * yy);
    return b;
}

std::array<double, 3> eval_color(const ShBlock& sh, const std::array<double, 3>& dir,
                                 int max_order) {
    const auto basis = sh_basis(dir);
    const int slots = max_order >= 3 ? 16 : (max_order + 1) * (max_order + 1);
    std::array<double, 3> rgb{};
    for (int ch = 0; ch < 3; ++ch) {
        double acc = 0;
        for (int j = 0; j < slots; ++j) acc += static_cast<double>(sh.at(ch, j)) * basis[j];
        acc += 0.5;
        rgb[ch] = acc > 0.0 ? acc : 0.0;
    }
    return rgb;
}

ImageBuffer render(const GaussianScene& scene, const Camera& cam, const RenderOptions& opt,
                   RenderStats* stats) {
    if (cam.width <= 0 || cam.height <= 0) throw std::invalid_argument("camera has no viewport");
    if (!scene.consistent()) throw std::invalid_argument("inconsistent scene arrays");

    const int w = cam.width, h = cam.height;
    ImageBuffer img(w, h);
    RenderStats local;
    if (opt.splat_weights) opt.splat_weights->assign(scene.count, 0.0);

    struct Splat {
        std::uint32_t index;
        double depth;
        double mx, my;         // projected center
        double ia, ib, ic;     // conic (inverse 2x2 covariance)
        int x0, x1, y0, y1;    // inclusive pixel bounds
        double alpha;          // activated opacity
        std::array<double, 3> rgb;
    };
    std::vector<Splat> splats;
    splats.reserve(scene.count);

    const auto eye = cam.center();
    const auto& R = cam.rotation;
    const auto& t = cam.translation;

    for (std::size_t i = 0; i < scene.count; ++i) {
        const float* p = scene.positions.data() + i * 3;
        const std::array<double, 3> pc = {
            R[0] * p[0] + R[1] * p[1] + R[2] * p[2] + t[0],
            R[3] * p[0] + R[4] * p[1] + R[5] * p[2] + t[1],
            R[6] * p[0] + R[7] * p[1] + R[8] * p[2] + t[2]};
        if (pc[2] <= kNearClip) {
            ++local.culled;
            continue;
        }

        float act_scale[3];
        const float* ls = scene.log_scales.data() + i * 3;
        for (int k = 0; k < 3; ++k) act_scale[k] = std::exp(ls[k]);
        const auto cov3 = covariance3d(scene.rotations.data() + i * 4, act_scale);
        const auto [a, b, c] = project_covariance(cov3, R, cam.fx, cam.fy, pc);
        const double det = a * c - b * b;
        if (!(det > 0.0)) {
            ++local.degenerate;
            continue;
        }

        Splat s;
        s.index = static_cast<std::uint32_t>(i);
        s.depth = pc[2];
        s.mx = cam.fx * pc[0] / pc[2] + cam.cx;
        s.my = cam.fy * pc[1] / pc[2] + cam.cy;
        s.ia = c / det;
        s.ib = -b / det;
        s.ic = a / det;

        const double mid = 0.5 * (a + c);
        const double lmax = mid + std::sqrt(std::max(0.1, mid * mid - det));
        const double radius = std::ceil(3.0 * std::sqrt(lmax));
        s.x0 = static_cast<int>(std::floor(s.mx - radius));
        s.x1 = static_cast<int>(std::ceil(s.mx + radius));
        s.y0 = static_cast<int>(std::floor(s.my - radius));
        s.y1 = static_cast<int>(std::ceil(s.my + radius));
        s.x0 = std::max(s.x0, 0);
        s.y0 = std::max(s.y0, 0);
        s.x1 = std::min(s.x1, w - 1);
        s.y1 = std::min(s.y1, h - 1);
        if (s.x0 > s.x1 || s.y0 > s.y1) {
            ++local.culled;
            continue;
        }

        s.alpha = sigmoid(static_cast<double>(scene.raw_opacities[i]));
        const float* pos = scene.positions.data() + i * 3;
        std::array<double, 3> dir = {pos[0] - eye[0], pos[1] - eye[1], pos[2] - eye[2]};
        const double n = std::sqrt(dir[0] * dir[0] + dir[1] * dir[1] + dir[2] * dir[2]);
        if (n > 0) {
            dir[0] /= n;
            dir[1] /= n;
            dir[2] /= n;
        } else {
            dir = {0, 0, 1};
        }
        s.rgb = eval_color(scene.sh[i], dir, opt.max_sh_order);
        splats.push_back(s);
    }

    std::vector<std::uint32_t> order(splats.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::uint32_t lhs, std::uint32_t rhs) {
        if (splats[lhs].depth != splats[rhs].depth) return splats[lhs].depth < splats[rhs].depth;
        return splats[lhs].index < splats[rhs].index;
    });

    std::vector<double> transmittance(static_cast<std::size_t>(w) * h, 1.0);

    for (std::uint32_t oi : order) {
        const Splat& s = splats[oi];
        bool touched = false;
        double weight = 0.0;
        for (int y = s.y0; y <= s.y1; ++y) {
            for (int x = s.x0; x <= s.x1; ++x) {
                double& T = transmittance[static_cast<std::size_t>(y) * w + x];
                if (T < kMinTransmittance) continue;
                const double dx = x - s.mx;
                const double dy = y - s.my;
                const double power =
                    -0.5 * (s.ia * dx * dx + 2.0 * s.ib * dx * dy + s.ic * dy * dy);
                if (power > 0.0) continue;
                double alpha = s.alpha * std::exp(power);
                if (alpha > kAlphaClamp) alpha = kAlphaClamp;
                if (alpha < kMinAlpha) continue;
                const double wgt = alpha * T;
                img.at(x, y, 0) += wgt * s.rgb[0];
                img.at(x, y, 1) += wgt * s.rgb[1];
                img.at(x, y, 2) += wgt * s.rgb[2];
                T *= 1.0 - alpha;
                weight += wgt;
                touched = true;
            }
        }
        if (touched) ++local.drawn;
        if (opt.splat_weights) (*opt.splat_weights)[s.index] = weight;
    }

    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const double T = transmittance[static_cast<std::size_t>(y) * w + x];
            for (int c = 0; c < 3; ++c) img.at(x, y, c) += T * opt.background[c];
        }
    }

    if (stats) *stats = local;
    return img;
}

}  // namespace splatstego
