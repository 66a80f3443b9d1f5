#include "ctxlab/nn.hpp"

#include <cmath>
#include <stdexcept>

#include "ctxlab/rng.hpp"

namespace ctxlab::nn {

void Linear::init(int in, int out, std::uint64_t seed, double scale) {
    W.resize(in, out);
    b.resize(1, out);
    if (scale <= 0.0) scale = std::sqrt(2.0 / (in + out));
    Rng rng(seed);
    for (Eigen::Index i = 0; i < W.value.size(); ++i) W.value.data()[i] = scale * rng.normal();
}

Eigen::MatrixXd Linear::backward(const Eigen::MatrixXd& x, const Eigen::MatrixXd& dy,
                                 bool want_param_grads) {
    if (want_param_grads) {
        W.grad.noalias() += x.transpose() * dy;
        b.grad.row(0) += dy.colwise().sum();
    }
    return dy * W.value.transpose();
}

Eigen::MatrixXd softmax_rows(const Eigen::MatrixXd& logits) {
    Eigen::MatrixXd out(logits.rows(), logits.cols());
    for (Eigen::Index i = 0; i < logits.rows(); ++i) {
        const double mx = logits.row(i).maxCoeff();
        Eigen::ArrayXd e = (logits.row(i).array() - mx).exp();
        out.row(i) = (e / e.sum()).matrix();
    }
    return out;
}

double smooth_l1_mean(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    if (a.size() != b.size()) throw std::invalid_argument("smooth_l1_mean: size mismatch");
    double total = 0.0;
    for (Eigen::Index i = 0; i < a.size(); ++i) total += smooth_l1(a(i) - b(i));
    return total / static_cast<double>(a.size());
}

Eigen::VectorXd smooth_l1_mean_grad(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    Eigen::VectorXd g(a.size());
    const double inv = 1.0 / static_cast<double>(a.size());
    for (Eigen::Index i = 0; i < a.size(); ++i) g(i) = inv * smooth_l1_deriv(a(i) - b(i));
    return g;
}

Eigen::MatrixXd im2col(const Eigen::MatrixXd& grid, const ConvSpec& spec) {
    const int oh = spec.out_h(), ow = spec.out_w();
    Eigen::MatrixXd cols = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(oh) * ow,
                                                 static_cast<Eigen::Index>(spec.in_c) * 9);
    for (int oy = 0; oy < oh; ++oy) {
        for (int ox = 0; ox < ow; ++ox) {
            const Eigen::Index row = static_cast<Eigen::Index>(oy) * ow + ox;
            for (int ky = 0; ky < 3; ++ky) {
                const int iy = oy * spec.stride + ky - 1;
                if (iy < 0 || iy >= spec.in_h) continue;
                for (int kx = 0; kx < 3; ++kx) {
                    const int ix = ox * spec.stride + kx - 1;
                    if (ix < 0 || ix >= spec.in_w) continue;
                    const Eigen::Index src = static_cast<Eigen::Index>(iy) * spec.in_w + ix;
                    const Eigen::Index col0 = static_cast<Eigen::Index>(ky * 3 + kx) * spec.in_c;
                    cols.block(row, col0, 1, spec.in_c) = grid.block(src, 0, 1, spec.in_c);
                }
            }
        }
    }
    return cols;
}

Eigen::MatrixXd col2im(const Eigen::MatrixXd& dcols, const ConvSpec& spec) {
    const int oh = spec.out_h(), ow = spec.out_w();
    Eigen::MatrixXd dgrid = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(spec.in_h) * spec.in_w,
                                                  spec.in_c);
    for (int oy = 0; oy < oh; ++oy) {
        for (int ox = 0; ox < ow; ++ox) {
            const Eigen::Index row = static_cast<Eigen::Index>(oy) * ow + ox;
            for (int ky = 0; ky < 3; ++ky) {
                const int iy = oy * spec.stride + ky - 1;
                if (iy < 0 || iy >= spec.in_h) continue;
                for (int kx = 0; kx < 3; ++kx) {
                    const int ix = ox * spec.stride + kx - 1;
                    if (ix < 0 || ix >= spec.in_w) continue;
                    const Eigen::Index dst = static_cast<Eigen::Index>(iy) * spec.in_w + ix;
                    const Eigen::Index col0 = static_cast<Eigen::Index>(ky * 3 + kx) * spec.in_c;
                    dgrid.block(dst, 0, 1, spec.in_c) += dcols.block(row, col0, 1, spec.in_c);
                }
            }
        }
    }
    return dgrid;
}

void Adam::attach(const std::vector<Tensor*>& params) {
    params_ = params;
    m_.clear();
    v_.clear();
    for (const auto* p : params_) {
        m_.push_back(Eigen::MatrixXd::Zero(p->value.rows(), p->value.cols()));
        v_.push_back(Eigen::MatrixXd::Zero(p->value.rows(), p->value.cols()));
    }
    t_ = 0;
}

void Adam::step() {
    ++t_;
    const double bc1 = 1.0 - std::pow(beta1, static_cast<double>(t_));
    const double bc2 = 1.0 - std::pow(beta2, static_cast<double>(t_));
    for (std::size_t i = 0; i < params_.size(); ++i) {
        Tensor& p = *params_[i];
        m_[i] = beta1 * m_[i] + (1.0 - beta1) * p.grad;
        v_[i] = (beta2 * v_[i].array() + (1.0 - beta2) * p.grad.array().square()).matrix();
        const Eigen::ArrayXXd mhat = m_[i].array() / bc1;
        const Eigen::ArrayXXd vhat = v_[i].array() / bc2;
        p.value.array() -= lr * mhat / (vhat.sqrt() + eps);
    }
}

}  // namespace ctxlab::nn
