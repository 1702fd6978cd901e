#pragma once

#include <cmath>
#include <cstddef>
#include <deque>
#include <vector>

namespace ffcs {

/// Anderson mixing for a fixed-point map x -> g(x).
/// Keeps the last `depth` iterate/image pairs and returns the affine combination
/// of images whose combined residual is smallest in the least-squares sense.
class AndersonMixer {
public:
    explicit AndersonMixer(std::size_t depth = 5) : depth_(depth) {}

    void reset() {
        x_.clear();
        g_.clear();
    }

    /// Next iterate from the current iterate x and its image g.
    std::vector<double> mix(const std::vector<double>& x, const std::vector<double>& g) {
        x_.push_back(x);
        g_.push_back(g);
        if (x_.size() > depth_ + 1) {
            x_.pop_front();
            g_.pop_front();
        }
        const std::size_t n = x.size(), p = x_.size() - 1;
        if (p == 0 || depth_ == 0) return g;

        // Residual differences df_j = f_{j+1} - f_j, with f = g - x.
        std::vector<std::vector<double>> df(p, std::vector<double>(n));
        std::vector<double> f(n);
        for (std::size_t i = 0; i < n; ++i) f[i] = g_[p][i] - x_[p][i];
        for (std::size_t j = 0; j < p; ++j)
            for (std::size_t i = 0; i < n; ++i)
                df[j][i] = (g_[j + 1][i] - x_[j + 1][i]) - (g_[j][i] - x_[j][i]);

        // Normal equations with a small ridge.
        std::vector<double> a(p * p), b(p);
        double trace = 0.0;
        for (std::size_t r = 0; r < p; ++r) {
            for (std::size_t c = 0; c <= r; ++c) {
                double s = 0.0;
                for (std::size_t i = 0; i < n; ++i) s += df[r][i] * df[c][i];
                a[r * p + c] = a[c * p + r] = s;
            }
            double s = 0.0;
            for (std::size_t i = 0; i < n; ++i) s += df[r][i] * f[i];
            b[r] = s;
            trace += a[r * p + r];
        }
        if (!(trace > 0.0)) return g;
        for (std::size_t r = 0; r < p; ++r) a[r * p + r] += 1e-12 * trace;

        // Cholesky.
        for (std::size_t c = 0; c < p; ++c) {
            double d = a[c * p + c];
            for (std::size_t k = 0; k < c; ++k) d -= a[c * p + k] * a[c * p + k];
            if (!(d > 0.0)) {
                reset();
                return g;
            }
            a[c * p + c] = std::sqrt(d);
            for (std::size_t r = c + 1; r < p; ++r) {
                double s = a[r * p + c];
                for (std::size_t k = 0; k < c; ++k) s -= a[r * p + k] * a[c * p + k];
                a[r * p + c] = s / a[c * p + c];
            }
        }
        std::vector<double> gamma(b);
        for (std::size_t r = 0; r < p; ++r) {
            for (std::size_t k = 0; k < r; ++k) gamma[r] -= a[r * p + k] * gamma[k];
            gamma[r] /= a[r * p + r];
        }
        for (std::size_t r = p; r-- > 0;) {
            for (std::size_t k = r + 1; k < p; ++k) gamma[r] -= a[k * p + r] * gamma[k];
            gamma[r] /= a[r * p + r];
        }

        std::vector<double> out(g);
        for (std::size_t j = 0; j < p; ++j)
            for (std::size_t i = 0; i < n; ++i) out[i] -= gamma[j] * (g_[j + 1][i] - g_[j][i]);
        return out;
    }

private:
    std::size_t depth_;
    std::deque<std::vector<double>> x_, g_;
};

}  // namespace ffcs
