#include "chd/witness.hpp"

#include <algorithm>
#include <cmath>

#include "chd/errors.hpp"

namespace chd {

namespace {

double lu_determinant(std::vector<double> a, int n) {
    double sign = 1.0;
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int row = col + 1; row < n; ++row) {
            if (std::abs(a[row * n + col]) > std::abs(a[piv * n + col])) piv = row;
        }
        if (a[piv * n + col] == 0.0) return 0.0;
        if (piv != col) {
            for (int c = 0; c < n; ++c) std::swap(a[piv * n + c], a[col * n + c]);
            sign = -sign;
        }
        const double d = a[col * n + col];
        for (int row = col + 1; row < n; ++row) {
            const double f = a[row * n + col] / d;
            for (int c = col; c < n; ++c) a[row * n + c] -= f * a[col * n + c];
        }
    }
    double det = sign;
    for (int i = 0; i < n; ++i) det *= a[i * n + i];
    return det;
}

}  // namespace

std::vector<double> moment_matrix(const MomentSet& moments,
                                  const std::vector<int>& orders) {
    if (orders.empty()) throw ArgumentError("moment matrix needs at least one order");
    for (std::size_t i = 0; i < orders.size(); ++i) {
        if (orders[i] < 0) throw ArgumentError("moment matrix orders must be >= 0");
        if (i > 0 && orders[i] <= orders[i - 1]) {
            throw ArgumentError("moment matrix orders must be strictly ascending");
        }
    }
    if (2 * orders.back() > moments.max_order()) {
        throw ArgumentError("moment matrix needs moments up to twice the top order");
    }
    const int n = static_cast<int>(orders.size());
    std::vector<double> mat(static_cast<std::size_t>(n) * n);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            mat[a * n + b] = moments.m[orders[a] + orders[b]];
        }
    }
    return mat;
}

double hankel_determinant(const MomentSet& moments, const std::vector<int>& orders) {
    const auto mat = moment_matrix(moments, orders);
    const int n = static_cast<int>(orders.size());
    switch (n) {
        case 1:
            return mat[0];
        case 2:
            return mat[0] * mat[3] - mat[1] * mat[2];
        case 3:
            return mat[0] * (mat[4] * mat[8] - mat[5] * mat[7]) -
                   mat[1] * (mat[3] * mat[8] - mat[5] * mat[6]) +
                   mat[2] * (mat[3] * mat[7] - mat[4] * mat[6]);
        default:
            return lu_determinant(mat, n);
    }
}

double normally_ordered_variance(const MomentSet& moments) {
    return hankel_determinant(moments, {0, 1});
}

std::vector<WitnessResult> witness_scan(const MomentSet& moments, double tol) {
    const int top = moments.max_order() / 2;
    if (top < 1) throw ArgumentError("witness scan needs moments up to order 2");
    if (top > 20) throw ArgumentError("witness scan is limited to 2^20 subsets");

    std::vector<WitnessResult> out;
    const unsigned long n_masks = 1ul << top;
    for (unsigned long mask = 1; mask < n_masks; ++mask) {
        std::vector<int> orders{0};
        for (int bit = 0; bit < top; ++bit) {
            if (mask & (1ul << bit)) orders.push_back(bit + 1);
        }
        const double det = hankel_determinant(moments, orders);
        out.push_back({std::move(orders), det, det < -tol});
    }
    return out;
}

bool any_nonclassical(const std::vector<WitnessResult>& results) {
    return std::any_of(results.begin(), results.end(),
                       [](const WitnessResult& r) { return r.nonclassical; });
}

}  // namespace chd
