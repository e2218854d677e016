#include "splatstego/autoencoder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "splatstego/rng.hpp"

namespace splatstego {

Tensor1d Conv1d::forward(const Tensor1d& x) const {
    Tensor1d y(out_ch, out_len(x.len));
    for (int oc = 0; oc < out_ch; ++oc) {
        double* yr = y.row(oc);
        const double* wr = w.data() + static_cast<std::size_t>(oc) * in_ch * kernel;
        for (int t = 0; t < y.len; ++t) {
            double acc = b[oc];
            const int base = t * stride - pad;
            for (int ic = 0; ic < in_ch; ++ic) {
                const double* xr = x.row(ic);
                const double* wk = wr + static_cast<std::size_t>(ic) * kernel;
                for (int k = 0; k < kernel; ++k) {
                    const int s = base + k;
                    if (s >= 0 && s < x.len) acc += wk[k] * xr[s];
                }
            }
            yr[t] = acc;
        }
    }
    return y;
}

Tensor1d Conv1d::backward(const Tensor1d& x, const Tensor1d& gout, std::vector<double>& gw,
                          std::vector<double>& gb) const {
    Tensor1d gx(x.ch, x.len);
    for (int oc = 0; oc < out_ch; ++oc) {
        const double* gr = gout.row(oc);
        const double* wr = w.data() + static_cast<std::size_t>(oc) * in_ch * kernel;
        double* gwr = gw.data() + static_cast<std::size_t>(oc) * in_ch * kernel;
        for (int t = 0; t < gout.len; ++t) {
            const double g = gr[t];
            if (g == 0.0) continue;
            gb[oc] += g;
            const int base = t * stride - pad;
            for (int ic = 0; ic < in_ch; ++ic) {
                const double* xr = x.row(ic);
                double* gxr = gx.row(ic);
                const double* wk = wr + static_cast<std::size_t>(ic) * kernel;
                double* gwk = gwr + static_cast<std::size_t>(ic) * kernel;
                for (int k = 0; k < kernel; ++k) {
                    const int s = base + k;
                    if (s >= 0 && s < x.len) {
                        gwk[k] += g * xr[s];
                        gxr[s] += g * wk[k];
                    }
                }
            }
        }
    }
    return gx;
}

Tensor1d ConvTranspose1d::forward(const Tensor1d& x) const {
    Tensor1d y(out_ch, out_len(x.len));
    for (int oc = 0; oc < out_ch; ++oc) {
        double* yr = y.row(oc);
        for (int t = 0; t < y.len; ++t) yr[t] = b[oc];
    }
    for (int ic = 0; ic < in_ch; ++ic) {
        const double* xr = x.row(ic);
        const double* wr = w.data() + static_cast<std::size_t>(ic) * out_ch * kernel;
        for (int s = 0; s < x.len; ++s) {
            const double xv = xr[s];
            const int base = s * stride - pad;
            for (int oc = 0; oc < out_ch; ++oc) {
                double* yr = y.row(oc);
                const double* wk = wr + static_cast<std::size_t>(oc) * kernel;
                for (int k = 0; k < kernel; ++k) {
                    const int t = base + k;
                    if (t >= 0 && t < y.len) yr[t] += xv * wk[k];
                }
            }
        }
    }
    return y;
}

Tensor1d ConvTranspose1d::backward(const Tensor1d& x, const Tensor1d& gout, std::vector<double>& gw,
                                   std::vector<double>& gb) const {
    Tensor1d gx(x.ch, x.len);
    for (int oc = 0; oc < out_ch; ++oc) {
        const double* gr = gout.row(oc);
        for (int t = 0; t < gout.len; ++t) gb[oc] += gr[t];
    }
    for (int ic = 0; ic < in_ch; ++ic) {
        const double* xr = x.row(ic);
        double* gxr = gx.row(ic);
        const double* wr = w.data() + static_cast<std::size_t>(ic) * out_ch * kernel;
        double* gwr = gw.data() + static_cast<std::size_t>(ic) * out_ch * kernel;
        for (int s = 0; s < x.len; ++s) {
            const double xv = xr[s];
            double acc = 0.0;
            const int base = s * stride - pad;
            for (int oc = 0; oc < out_ch; ++oc) {
                const double* gr = gout.row(oc);
                const double* wk = wr + static_cast<std::size_t>(oc) * kernel;
                double* gwk = gwr + static_cast<std::size_t>(oc) * kernel;
                for (int k = 0; k < kernel; ++k) {
                    const int t = base + k;
                    if (t >= 0 && t < gout.len) {
                        acc += gr[t] * wk[k];
                        gwk[k] += gr[t] * xv;
                    }
                }
            }
            gxr[s] += acc;
        }
    }
    return gx;
}

void Autoencoder::init(std::uint64_t seed) {
    Rng rng(seed);
    auto fill = [&](std::vector<double>& w, int fan_in) {
        const double stddev = std::sqrt(2.0 / fan_in);
        for (double& v : w) v = rng.normal(0.0, stddev);
    };
    fill(enc1.w, enc1.in_ch * enc1.kernel);
    fill(enc2.w, enc2.in_ch * enc2.kernel);
    fill(dec1.w, dec1.in_ch * dec1.kernel);
    fill(dec2.w, dec2.in_ch * dec2.kernel);
    std::fill(enc1.b.begin(), enc1.b.end(), 0.0);
    std::fill(enc2.b.begin(), enc2.b.end(), 0.0);
    std::fill(dec1.b.begin(), dec1.b.end(), 0.0);
    std::fill(dec2.b.begin(), dec2.b.end(), 0.0);
}

std::vector<std::vector<double>*> Autoencoder::params() {
    return {&enc1.w, &enc1.b, &enc2.w, &enc2.b, &dec1.w, &dec1.b, &dec2.w, &dec2.b};
}

std::vector<const std::vector<double>*> Autoencoder::params() const {
    return {&enc1.w, &enc1.b, &enc2.w, &enc2.b, &dec1.w, &dec1.b, &dec2.w, &dec2.b};
}

void TrainConfig::validate() const {
    if (!(learning_rate > 0.0)) throw std::invalid_argument("learning_rate must be positive");
    if (!(beta1 >= 0.0 && beta1 < 1.0)) throw std::invalid_argument("beta1 must be in [0,1)");
    if (!(beta2 >= 0.0 && beta2 < 1.0)) throw std::invalid_argument("beta2 must be in [0,1)");
    if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
    if (max_epochs < 1) throw std::invalid_argument("max_epochs must be at least 1");
    if (!(target_mse >= 0.0)) throw std::invalid_argument("target_mse must be non-negative");
}

namespace {

int padded_len(std::size_t n) {
    return static_cast<int>((n + 3) / 4 * 4);
}

Tensor1d pack_input(const std::vector<double>& input) {
    const int lp = padded_len(input.size());
    Tensor1d x(1, lp);
    double* xr = x.row(0);
    for (std::size_t i = 0; i < input.size(); ++i) xr[i] = input[i];
    const double edge = input.back();
    for (int i = static_cast<int>(input.size()); i < lp; ++i) xr[i] = edge;
    return x;
}

void relu_inplace(Tensor1d& t) {
    for (double& v : t.v) v = v > 0.0 ? v : 0.0;
}

// d(relu)/dx expressed through the activated value: 1 where act > 0.
void relu_backprop(Tensor1d& grad, const Tensor1d& act) {
    for (std::size_t i = 0; i < grad.v.size(); ++i) {
        if (act.v[i] <= 0.0) grad.v[i] = 0.0;
    }
}

struct ForwardCache {
    Tensor1d x, r1, r2, r3, z;  // post-activation values and pre-sigmoid output
    std::vector<double> y;      // sigmoid(z), truncated to the input length
};

void run_forward(const Autoencoder& m, const std::vector<double>& input, ForwardCache& c) {
    c.x = pack_input(input);
    c.r1 = m.enc1.forward(c.x);
    relu_inplace(c.r1);
    c.r2 = m.enc2.forward(c.r1);
    relu_inplace(c.r2);
    c.r3 = m.dec1.forward(c.r2);
    relu_inplace(c.r3);
    c.z = m.dec2.forward(c.r3);
    c.y.resize(input.size());
    const double* zr = c.z.row(0);
    for (std::size_t i = 0; i < input.size(); ++i) c.y[i] = 1.0 / (1.0 + std::exp(-zr[i]));
}

}  // namespace

std::vector<double> ae_forward(const Autoencoder& model, const std::vector<double>& input) {
    if (input.empty()) throw std::invalid_argument("autoencoder input is empty");
    ForwardCache c;
    run_forward(model, input, c);
    return std::move(c.y);
}

double ae_loss_and_grad(const Autoencoder& model, const std::vector<double>& x,
                        const std::vector<double>& target,
                        std::vector<std::vector<double>>* grads) {
    if (x.empty()) throw std::invalid_argument("autoencoder input is empty");
    if (x.size() != target.size())
        throw std::invalid_argument("input/target length mismatch");

    ForwardCache c;
    run_forward(model, x, c);

    const std::size_t n = x.size();
    double mse = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = c.y[i] - target[i];
        mse += d * d;
    }
    mse /= static_cast<double>(n);
    if (!grads) return mse;

    auto ps = model.params();
    grads->resize(ps.size());
    for (std::size_t i = 0; i < ps.size(); ++i) (*grads)[i].assign(ps[i]->size(), 0.0);

    // dL/dz; padded tail positions never reach the loss.
    Tensor1d gz(1, c.z.len);
    double* gzr = gz.row(0);
    for (std::size_t i = 0; i < n; ++i) {
        const double y = c.y[i];
        gzr[i] = 2.0 * (y - target[i]) / static_cast<double>(n) * y * (1.0 - y);
    }

    Tensor1d g3 = model.dec2.backward(c.r3, gz, (*grads)[6], (*grads)[7]);
    relu_backprop(g3, c.r3);
    Tensor1d g2 = model.dec1.backward(c.r2, g3, (*grads)[4], (*grads)[5]);
    relu_backprop(g2, c.r2);
    Tensor1d g1 = model.enc2.backward(c.r1, g2, (*grads)[2], (*grads)[3]);
    relu_backprop(g1, c.r1);
    model.enc1.backward(c.x, g1, (*grads)[0], (*grads)[1]);
    return mse;
}

TrainReport ae_train(Autoencoder& model, const std::vector<double>& cover_op,
                     const std::vector<double>& hidden_op, const TrainConfig& cfg) {
    cfg.validate();
    if (cover_op.size() != hidden_op.size())
        throw std::invalid_argument("cover/hidden opacity length mismatch");
    if (cover_op.empty()) throw std::invalid_argument("empty training sequence");

    std::vector<double> x(cover_op.size());
    for (std::size_t i = 0; i < cover_op.size(); ++i) x[i] = 1.0 - cover_op[i];

    model.init(cfg.seed);
    auto ps = model.params();
    std::vector<std::vector<double>> m(ps.size()), v(ps.size());
    for (std::size_t i = 0; i < ps.size(); ++i) {
        m[i].assign(ps[i]->size(), 0.0);
        v[i].assign(ps[i]->size(), 0.0);
    }

    std::vector<std::vector<double>> best;
    best.reserve(ps.size());
    for (auto* p : ps) best.push_back(*p);
    double best_mse = std::numeric_limits<double>::infinity();
    int best_epoch = 0;

    std::vector<std::vector<double>> grads;
    for (int epoch = 1; epoch <= cfg.max_epochs; ++epoch) {
        const double mse = ae_loss_and_grad(model, x, hidden_op, &grads);
        if (!std::isfinite(mse)) throw std::runtime_error("training diverged: non-finite loss");
        if (mse < best_mse) {
            best_mse = mse;
            best_epoch = epoch;
            for (std::size_t i = 0; i < ps.size(); ++i) best[i] = *ps[i];
        }
        if (mse <= cfg.target_mse) return {mse, epoch};

        const double bc1 = 1.0 - std::pow(cfg.beta1, epoch);
        const double bc2 = 1.0 - std::pow(cfg.beta2, epoch);
        for (std::size_t i = 0; i < ps.size(); ++i) {
            std::vector<double>& p = *ps[i];
            for (std::size_t j = 0; j < p.size(); ++j) {
                const double g = grads[i][j];
                m[i][j] = cfg.beta1 * m[i][j] + (1.0 - cfg.beta1) * g;
                v[i][j] = cfg.beta2 * v[i][j] + (1.0 - cfg.beta2) * g * g;
                const double mh = m[i][j] / bc1;
                const double vh = v[i][j] / bc2;
                p[j] -= cfg.learning_rate * mh / (std::sqrt(vh) + cfg.epsilon);
            }
        }
    }

    for (std::size_t i = 0; i < ps.size(); ++i) *ps[i] = best[i];
    return {best_mse, best_epoch};
}

}  // namespace splatstego
