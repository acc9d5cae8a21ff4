// SPDX-License-Identifier: Apache-2.0
#include <tmap/common.hpp>
#include <tmap/zmod.hpp>

namespace tmap
{
bool is_prime(uint64_t n)
{
    if (n < 2)
        return false;
    for (uint64_t q = 2; q * q <= n; ++q)
        if (n % q == 0)
            return false;
    return true;
}

uint32_t Zmod::pow(uint32_t a, uint64_t e) const
{
    uint64_t r = 1 % m, b = a % m;
    while (e)
    {
        if (e & 1)
            r = r * b % m;
        b = b * b % m;
        e >>= 1;
    }
    return static_cast<uint32_t>(r);
}

uint32_t Zmod::inv(uint32_t a) const
{
    require(a % m != 0, "inverse of zero");
    return pow(a, m - 2);
}

Mat Mat::identity(size_t n)
{
    Mat r(n, n);
    for (size_t i = 0; i < n; ++i)
        r(i, i) = 1;
    return r;
}

Mat mat_mul(const Zmod& z, const Mat& x, const Mat& y)
{
    require(x.cols == y.rows, "matrix shape mismatch");
    Mat r(x.rows, y.cols);
    for (size_t i = 0; i < x.rows; ++i)
        for (size_t k = 0; k < x.cols; ++k)
        {
            const uint32_t c = x(i, k);
            if (c == 0)
                continue;
            for (size_t j = 0; j < y.cols; ++j)
                r(i, j) = z.add(r(i, j), z.mul(c, y(k, j)));
        }
    return r;
}

Mat mat_add(const Zmod& z, const Mat& x, const Mat& y)
{
    require(x.rows == y.rows && x.cols == y.cols, "matrix shape mismatch");
    Mat r = x;
    for (size_t i = 0; i < r.a.size(); ++i)
        r.a[i] = z.add(r.a[i], y.a[i]);
    return r;
}

Mat mat_scale(const Zmod& z, const Mat& x, uint32_t c)
{
    Mat r = x;
    for (auto& v : r.a)
        v = z.mul(v, c);
    return r;
}

Vec mat_vec(const Zmod& z, const Mat& x, const Vec& v)
{
    require(x.cols == v.size(), "matrix/vector shape mismatch");
    Vec r(x.rows, 0);
    for (size_t i = 0; i < x.rows; ++i)
    {
        uint64_t acc = 0;
        for (size_t j = 0; j < x.cols; ++j)
            acc = (acc + uint64_t{x(i, j)} * v[j]) % z.m;
        r[i] = static_cast<uint32_t>(acc);
    }
    return r;
}

Mat transpose(const Mat& x)
{
    Mat r(x.cols, x.rows);
    for (size_t i = 0; i < x.rows; ++i)
        for (size_t j = 0; j < x.cols; ++j)
            r(j, i) = x(i, j);
    return r;
}

std::vector<size_t> rref(const Zmod& z, Mat& x)
{
    std::vector<size_t> pivots;
    size_t row = 0;
    for (size_t col = 0; col < x.cols && row < x.rows; ++col)
    {
        size_t sel = row;
        while (sel < x.rows && x(sel, col) == 0)
            ++sel;
        if (sel == x.rows)
            continue;
        if (sel != row)
            for (size_t j = 0; j < x.cols; ++j)
                std::swap(x(sel, j), x(row, j));
        const uint32_t iv = z.inv(x(row, col));
        for (size_t j = col; j < x.cols; ++j)
            x(row, j) = z.mul(x(row, j), iv);
        for (size_t i = 0; i < x.rows; ++i)
        {
            if (i == row || x(i, col) == 0)
                continue;
            const uint32_t f = z.neg(x(i, col));
            for (size_t j = col; j < x.cols; ++j)
                if (x(row, j))
                    x(i, j) = z.add(x(i, j), z.mul(f, x(row, j)));
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

size_t rank(const Zmod& z, Mat x)
{
    return rref(z, x).size();
}

std::optional<Mat> inverse(const Zmod& z, const Mat& x)
{
    require(x.rows == x.cols, "inverse of non-square matrix");
    const size_t n = x.rows;
    Mat aug(n, 2 * n);
    for (size_t i = 0; i < n; ++i)
    {
        for (size_t j = 0; j < n; ++j)
            aug(i, j) = x(i, j);
        aug(i, n + i) = 1;
    }
    auto piv = rref(z, aug);
    if (piv.size() < n || piv[n - 1] != n - 1)
        return std::nullopt;
    Mat r(n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            r(i, j) = aug(i, n + j);
    return r;
}

std::vector<Vec> nullspace(const Zmod& z, const Mat& x)
{
    Mat r = x;
    auto piv = rref(z, r);
    std::vector<bool> is_piv(x.cols, false);
    for (auto c : piv)
        is_piv[c] = true;
    std::vector<Vec> basis;
    for (size_t free = 0; free < x.cols; ++free)
    {
        if (is_piv[free])
            continue;
        Vec v(x.cols, 0);
        v[free] = 1;
        for (size_t i = 0; i < piv.size(); ++i)
            v[piv[i]] = z.neg(r(i, free));
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<Vec> solve(const Zmod& z, const Mat& x, const Vec& b)
{
    require(b.size() == x.rows, "rhs shape mismatch");
    Mat aug(x.rows, x.cols + 1);
    for (size_t i = 0; i < x.rows; ++i)
    {
        for (size_t j = 0; j < x.cols; ++j)
            aug(i, j) = x(i, j);
        aug(i, x.cols) = b[i];
    }
    auto piv = rref(z, aug);
    if (!piv.empty() && piv.back() == x.cols)
        return std::nullopt;
    Vec v(x.cols, 0);
    for (size_t i = 0; i < piv.size(); ++i)
        v[piv[i]] = aug(i, x.cols);
    return v;
}
}  // namespace tmap
