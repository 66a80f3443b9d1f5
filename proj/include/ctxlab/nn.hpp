#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <vector>

namespace ctxlab::nn {

/// Trainable array plus its gradient accumulator.
struct Tensor {
    Eigen::MatrixXd value;
    Eigen::MatrixXd grad;

    void resize(Eigen::Index rows, Eigen::Index cols) {
        value.setZero(rows, cols);
        grad.setZero(rows, cols);
    }
    void zero_grad() { grad.setZero(); }
};

/// Dense layer over row-major batches: Y = X * W + b.
struct Linear {
    Tensor W;  // (in, out)
    Tensor b;  // (1, out)

    void init(int in, int out, std::uint64_t seed, double scale = 0.0);
    Eigen::MatrixXd forward(const Eigen::MatrixXd& x) const {
        return (x * W.value).rowwise() + b.value.row(0);
    }
    /// Backpropagates dY; optionally accumulates parameter gradients.
    Eigen::MatrixXd backward(const Eigen::MatrixXd& x, const Eigen::MatrixXd& dy,
                             bool want_param_grads);
};

inline Eigen::MatrixXd tanh_forward(const Eigen::MatrixXd& x) { return x.array().tanh().matrix(); }
/// dX given the *activated* output A = tanh(pre).
inline Eigen::MatrixXd tanh_backward(const Eigen::MatrixXd& a, const Eigen::MatrixXd& da) {
    return (da.array() * (1.0 - a.array().square())).matrix();
}
inline Eigen::MatrixXd sigmoid_forward(const Eigen::MatrixXd& x) {
    return (1.0 / (1.0 + (-x.array()).exp())).matrix();
}
inline Eigen::MatrixXd sigmoid_backward(const Eigen::MatrixXd& s, const Eigen::MatrixXd& ds) {
    return (ds.array() * s.array() * (1.0 - s.array())).matrix();
}

/// Numerically stable row-wise softmax.
Eigen::MatrixXd softmax_rows(const Eigen::MatrixXd& logits);

// Smooth L1 (transition point 1): 0.5 x^2 for |x| < 1, |x| - 0.5 otherwise.
inline double smooth_l1(double x) {
    const double a = x < 0 ? -x : x;
    return a < 1.0 ? 0.5 * x * x : a - 0.5;
}
inline double smooth_l1_deriv(double x) {
    if (x > 1.0) return 1.0;
    if (x < -1.0) return -1.0;
    return x;
}
/// Mean smooth-L1 over the elementwise residual a - b.
double smooth_l1_mean(const Eigen::VectorXd& a, const Eigen::VectorXd& b);
/// Gradient of smooth_l1_mean with respect to a.
Eigen::VectorXd smooth_l1_mean_grad(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

/// 3x3 convolution descriptor, padding 1; planar grids stored as (H*W, C).
struct ConvSpec {
    int in_h = 0, in_w = 0, in_c = 0, out_c = 0, stride = 1;
    int out_h() const { return (in_h + 2 - 3) / stride + 1; }
    int out_w() const { return (in_w + 2 - 3) / stride + 1; }
};

/// Patch matrix (out_h*out_w, in_c*9); column = (ky*3+kx)*in_c + c.
Eigen::MatrixXd im2col(const Eigen::MatrixXd& grid, const ConvSpec& spec);
/// Scatter-add transpose of im2col.
Eigen::MatrixXd col2im(const Eigen::MatrixXd& dcols, const ConvSpec& spec);

struct Adam {
    double lr = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;

    void attach(const std::vector<Tensor*>& params);
    void step();

private:
    std::vector<Tensor*> params_;
    std::vector<Eigen::MatrixXd> m_, v_;
    long t_ = 0;
};

}  // namespace ctxlab::nn
