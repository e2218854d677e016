#pragma once

#include <cstdint>
#include <vector>

namespace splatstego {

/// [channels][length] tensor, row-major.
struct Tensor1d {
    int ch = 0;
    int len = 0;
    std::vector<double> v;

    Tensor1d() = default;
    Tensor1d(int c, int l) : ch(c), len(l), v(static_cast<std::size_t>(c) * l, 0.0) {}
    double* row(int c) { return v.data() + static_cast<std::size_t>(c) * len; }
    const double* row(int c) const { return v.data() + static_cast<std::size_t>(c) * len; }
};

struct Conv1d {
    int in_ch, out_ch, kernel, stride, pad;
    std::vector<double> w;  // [out][in][k]
    std::vector<double> b;  // [out]

    Conv1d(int ic, int oc, int k, int s, int p)
        : in_ch(ic), out_ch(oc), kernel(k), stride(s), pad(p),
          w(static_cast<std::size_t>(oc) * ic * k, 0.0), b(oc, 0.0) {}

    int out_len(int in_len) const { return (in_len + 2 * pad - kernel) / stride + 1; }
    Tensor1d forward(const Tensor1d& x) const;
    Tensor1d backward(const Tensor1d& x, const Tensor1d& gout, std::vector<double>& gw,
                      std::vector<double>& gb) const;
};

struct ConvTranspose1d {
    int in_ch, out_ch, kernel, stride, pad, out_pad;
    std::vector<double> w;  // [in][out][k]
    std::vector<double> b;  // [out]

    ConvTranspose1d(int ic, int oc, int k, int s, int p, int op)
        : in_ch(ic), out_ch(oc), kernel(k), stride(s), pad(p), out_pad(op),
          w(static_cast<std::size_t>(ic) * oc * k, 0.0), b(oc, 0.0) {}

    int out_len(int in_len) const { return (in_len - 1) * stride - 2 * pad + kernel + out_pad; }
    Tensor1d forward(const Tensor1d& x) const;
    Tensor1d backward(const Tensor1d& x, const Tensor1d& gout, std::vector<double>& gw,
                      std::vector<double>& gb) const;
};

/// Fully-convolutional opacity mapper: conv(1->8)-ReLU-conv(8->16)-ReLU,
/// then mirrored transposed convs (16->8)-ReLU-(8->1)-sigmoid. Kernel 5,
/// stride 2, padding 2, output padding 1; output length equals input length
/// for inputs padded to a multiple of 4.
struct Autoencoder {
    Conv1d enc1{1, 8, 5, 2, 2};
    Conv1d enc2{8, 16, 5, 2, 2};
    ConvTranspose1d dec1{16, 8, 5, 2, 2, 1};
    ConvTranspose1d dec2{8, 1, 5, 2, 2, 1};

    void init(std::uint64_t seed);

    std::vector<std::vector<double>*> params();
    std::vector<const std::vector<double>*> params() const;
};

struct TrainConfig {
    double learning_rate = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
    int max_epochs = 2000;
    double target_mse = 1e-3;
    std::uint64_t seed = 0;

    void validate() const;
};

struct TrainReport {
    double mse = 0.0;
    int epochs = 0;
};

/// Deterministic forward pass. Pads the sequence to a multiple of 4 by edge
/// replication, runs the network, truncates back to the input length.
std::vector<double> ae_forward(const Autoencoder& model, const std::vector<double>& input);

/// MSE of ae_forward(x) against target, and (optionally) analytic gradients
/// for every trainable tensor, in params() order (w then b per layer).
double ae_loss_and_grad(const Autoencoder& model, const std::vector<double>& x,
                        const std::vector<double>& target,
                        std::vector<std::vector<double>>* grads);

/// Full-batch Adam on MSE(D(E(1 - cover)), hidden). Stops at target_mse;
/// otherwise returns the best weights seen. Throws on length mismatch or a
/// non-finite loss.
TrainReport ae_train(Autoencoder& model, const std::vector<double>& cover_op,
                     const std::vector<double>& hidden_op, const TrainConfig& cfg);

}  // namespace splatstego
