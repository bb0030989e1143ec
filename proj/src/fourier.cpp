#include "campanato/fourier.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace campanato {

int next_pow2(int n) {
    int m = 1;
    while (m < n) m <<= 1;
    return m;
}

namespace {

// Twiddle factors e^{-2 pi i k / N} for k < N/2, cached per size (write-once
// under a lock so concurrent sweeps stay deterministic).
const std::vector<cplx>& twiddles(int n) {
    static std::mutex mu;
    static std::map<int, std::vector<cplx>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    std::vector<cplx> w(n / 2);
    for (int k = 0; k < n / 2; ++k) {
        const double t = -two_pi * k / n;
        w[k] = cplx(std::cos(t), std::sin(t));
    }
    return cache.emplace(n, std::move(w)).first->second;
}

}  // namespace

void fft_inplace(std::vector<cplx>& a, bool inverse) {
    const int n = static_cast<int>(a.size());
    if (n <= 1) return;
    if ((n & (n - 1)) != 0) throw InputError("fft_inplace: size must be a power of two");

    // Bit-reversal permutation.
    for (int i = 1, j = 0; i < n; ++i) {
        int bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }

    const auto& w = twiddles(n);
    for (int len = 2; len <= n; len <<= 1) {
        const int stride = n / len;
        for (int i = 0; i < n; i += len) {
            for (int k = 0; k < len / 2; ++k) {
                const cplx tw = inverse ? std::conj(w[k * stride]) : w[k * stride];
                const cplx u = a[i + k];
                const cplx v = a[i + k + len / 2] * tw;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
            }
        }
    }
}

std::vector<cplx> fourier_coefficients(std::vector<cplx> samples) {
    const double inv = 1.0 / static_cast<double>(samples.size());
    fft_inplace(samples, false);
    for (auto& x : samples) x *= inv;
    return samples;
}

const std::vector<cplx>& circle_points(int M) {
    static std::mutex mu;
    static std::map<int, std::vector<cplx>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(M);
    if (it != cache.end()) return it->second;
    std::vector<cplx> pts(M);
    for (int j = 0; j < M; ++j) {
        const double t = two_pi * j / M;
        pts[j] = cplx(std::cos(t), std::sin(t));
    }
    return cache.emplace(M, std::move(pts)).first->second;
}

}  // namespace campanato
