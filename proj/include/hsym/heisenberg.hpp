#pragma once

// Concrete side: the finite Heisenberg group as exponent triples and as
// complex matrices, the tensor generators A1..A4, the commutation phases,
// the diagonal matrix R, Fourier and quadratic-phase normalizer elements,
// and extraction of the exponent matrix of a conjugation action.
//
// Everything here is double precision and exists to verify the exact
// layer; comparisons are relative to the largest entry magnitude.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <vector>

#include "hsym/selement.hpp"

namespace hsym {

using Complex = std::complex<double>;

inline constexpr double default_tolerance = 1e-9;

/// exp(2 pi i * num / den)
inline Complex root_of_unity(Int num, Int den)
{
    double angle = 2.0 * std::numbers::pi * static_cast<double>(mod(num, den)) / static_cast<double>(den);
    return std::polar(1.0, angle);
}

/// omega^j Q^k P^l in the Heisenberg group of order n^3.
struct HeisenbergElement {
    Int n = 1;
    Int j = 0;
    Int k = 0;
    Int l = 0;

    static HeisenbergElement make(Int n, Int j, Int k, Int l)
    {
        if (n < 1)
            throw InvalidParams("Heisenberg dimension must be positive");
        return {n, mod(j, n), mod(k, n), mod(l, n)};
    }

    /// P^l Q^k' = omega^(l k') Q^k' P^l.
    friend HeisenbergElement operator*(const HeisenbergElement& x, const HeisenbergElement& y)
    {
        if (x.n != y.n)
            throw ParamMismatch("Heisenberg elements of different dimension");
        return make(x.n, x.j + y.j + mulmod(x.l, y.k, x.n), x.k + y.k, x.l + y.l);
    }

    HeisenbergElement inverse() const { return make(n, -j + mulmod(l, k, n), -k, -l); }

    bool is_central() const noexcept { return k == 0 && l == 0; }

    friend bool operator==(const HeisenbergElement&, const HeisenbergElement&) = default;
};

/// Dense complex square matrix, row-major.
class ConcreteMatrix {
public:
    explicit ConcreteMatrix(std::size_t dim = 1, double tol = default_tolerance)
        : dim_(dim), tol_(tol), e_(dim * dim)
    {
    }

    static ConcreteMatrix identity(std::size_t dim)
    {
        ConcreteMatrix m(dim);
        for (std::size_t i = 0; i < dim; ++i)
            m(i, i) = 1.0;
        return m;
    }

    static ConcreteMatrix diagonal(const std::vector<Complex>& diag)
    {
        ConcreteMatrix m(diag.size());
        for (std::size_t i = 0; i < diag.size(); ++i)
            m(i, i) = diag[i];
        return m;
    }

    std::size_t dim() const noexcept { return dim_; }
    double tol() const noexcept { return tol_; }
    void set_tol(double tol) noexcept { tol_ = tol; }

    Complex operator()(std::size_t r, std::size_t c) const { return e_[r * dim_ + c]; }
    Complex& operator()(std::size_t r, std::size_t c) { return e_[r * dim_ + c]; }

    double max_abs() const
    {
        double m = 0.0;
        for (const auto& v : e_)
            m = std::max(m, std::abs(v));
        return m;
    }

    friend ConcreteMatrix operator*(const ConcreteMatrix& x, const ConcreteMatrix& y)
    {
        if (x.dim_ != y.dim_)
            throw ParamMismatch("matrix dimensions differ");
        ConcreteMatrix r(x.dim_, std::max(x.tol_, y.tol_));
        for (std::size_t i = 0; i < x.dim_; ++i)
            for (std::size_t k = 0; k < x.dim_; ++k) {
                Complex xik = x(i, k);
                if (xik == 0.0)
                    continue;
                for (std::size_t j = 0; j < x.dim_; ++j)
                    r(i, j) += xik * y(k, j);
            }
        return r;
    }

    friend ConcreteMatrix operator*(Complex s, ConcreteMatrix x)
    {
        for (auto& v : x.e_)
            v *= s;
        return x;
    }

    ConcreteMatrix pow(Int k) const
    {
        if (k < 0)
            return inverse().pow(-k);
        ConcreteMatrix result = identity(dim_), base = *this;
        result.tol_ = tol_;
        while (k > 0) {
            if (k & 1)
                result = result * base;
            base = base * base;
            k >>= 1;
        }
        return result;
    }

    /// Gauss-Jordan with partial pivoting. Throws IllConditioned if a pivot
    /// vanishes relative to the matrix scale or the residual exceeds tol.
    ConcreteMatrix inverse() const
    {
        const std::size_t n = dim_;
        ConcreteMatrix a = *this, inv = identity(n);
        inv.tol_ = tol_;
        const double scale = std::max(max_abs(), 1e-300);
        for (std::size_t col = 0; col < n; ++col) {
            std::size_t piv = col;
            for (std::size_t r = col + 1; r < n; ++r)
                if (std::abs(a(r, col)) > std::abs(a(piv, col)))
                    piv = r;
            if (std::abs(a(piv, col)) < 1e-12 * scale)
                throw IllConditioned("matrix is singular to working precision");
            if (piv != col)
                for (std::size_t c = 0; c < n; ++c) {
                    std::swap(a(piv, c), a(col, c));
                    std::swap(inv(piv, c), inv(col, c));
                }
            Complex p = a(col, col);
            for (std::size_t c = 0; c < n; ++c) {
                a(col, c) /= p;
                inv(col, c) /= p;
            }
            for (std::size_t r = 0; r < n; ++r) {
                if (r == col || a(r, col) == 0.0)
                    continue;
                Complex f = a(r, col);
                for (std::size_t c = 0; c < n; ++c) {
                    a(r, c) -= f * a(col, c);
                    inv(r, c) -= f * inv(col, c);
                }
            }
        }
        ConcreteMatrix check = (*this) * inv;
        double residual = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                residual = std::max(residual, std::abs(check(i, j) - (i == j ? 1.0 : 0.0)));
        if (residual > tol_)
            throw IllConditioned("inverse residual exceeds tolerance");
        return inv;
    }

    friend ConcreteMatrix kron(const ConcreteMatrix& x, const ConcreteMatrix& y)
    {
        const std::size_t m = y.dim_;
        ConcreteMatrix r(x.dim_ * m, std::max(x.tol_, y.tol_));
        for (std::size_t i1 = 0; i1 < x.dim_; ++i1)
            for (std::size_t j1 = 0; j1 < x.dim_; ++j1) {
                Complex xv = x(i1, j1);
                if (xv == 0.0)
                    continue;
                for (std::size_t i2 = 0; i2 < m; ++i2)
                    for (std::size_t j2 = 0; j2 < m; ++j2)
                        r(i1 * m + i2, j1 * m + j2) = xv * y(i2, j2);
            }
        return r;
    }

private:
    std::size_t dim_;
    double tol_;
    std::vector<Complex> e_;
};

/// X = alpha * Y entrywise within tol * (largest entry magnitude), alpha != 0.
/// If Y = 0 the answer is 1 when X = 0 as well and absent otherwise.
inline std::optional<Complex> proportional_to(const ConcreteMatrix& x, const ConcreteMatrix& y)
{
    if (x.dim() != y.dim())
        throw ParamMismatch("proportional_to: dimensions differ");
    const std::size_t n = x.dim();
    const double scale = std::max(x.max_abs(), y.max_abs());
    const double tol = x.tol() * std::max(scale, 1.0);
    std::size_t pr = 0, pc = 0;
    double best = -1.0;
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
            if (std::abs(y(r, c)) > best) {
                best = std::abs(y(r, c));
                pr = r;
                pc = c;
            }
    if (best <= tol)
        return x.max_abs() <= tol ? std::optional<Complex>(1.0) : std::nullopt;
    Complex alpha = x(pr, pc) / y(pr, pc);
    if (std::abs(alpha) * best <= tol)
        return std::nullopt;
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
            if (std::abs(x(r, c) - alpha * y(r, c)) > tol)
                return std::nullopt;
    return alpha;
}

/// diag(1, omega, ..., omega^(n-1)), omega = exp(2 pi i / n).
inline ConcreteMatrix pauli_q(Int n)
{
    if (n < 1)
        throw InvalidParams("dimension must be positive");
    std::vector<Complex> diag(static_cast<std::size_t>(n));
    for (Int i = 0; i < n; ++i)
        diag[static_cast<std::size_t>(i)] = root_of_unity(i, n);
    return ConcreteMatrix::diagonal(diag);
}

/// Cyclic shift with (P)_{i,j} = 1 iff j = i + 1 mod n.
inline ConcreteMatrix pauli_p(Int n)
{
    if (n < 1)
        throw InvalidParams("dimension must be positive");
    auto dim = static_cast<std::size_t>(n);
    ConcreteMatrix p(dim);
    for (std::size_t i = 0; i < dim; ++i)
        p(i, (i + 1) % dim) = 1.0;
    return p;
}

inline ConcreteMatrix to_matrix(const HeisenbergElement& h)
{
    return root_of_unity(h.j, h.n) * (pauli_q(h.n).pow(h.k) * pauli_p(h.n).pow(h.l));
}

/// A1 = P_n (x) I_m, A2 = Q_n (x) I_m, A3 = I_n (x) P_m, A4 = I_n (x) Q_m;
/// the first factor is the slow index.
inline ConcreteMatrix tensor_generator(const GroupParams& p, int i)
{
    auto n = static_cast<std::size_t>(p.n()), m = static_cast<std::size_t>(p.m());
    switch (i) {
    case 1:
        return kron(pauli_p(p.n()), ConcreteMatrix::identity(m));
    case 2:
        return kron(pauli_q(p.n()), ConcreteMatrix::identity(m));
    case 3:
        return kron(ConcreteMatrix::identity(n), pauli_p(p.m()));
    case 4:
        return kron(ConcreteMatrix::identity(n), pauli_q(p.m()));
    default:
        throw InvalidParams("tensor generator index must be 1..4");
    }
}

/// A1^e1 A2^e2 A3^e3 A4^e4 = (P^e1 Q^e2) (x) (P^e3 Q^e4).
inline ConcreteMatrix tensor_monomial(const GroupParams& p, const std::array<Int, 4>& e)
{
    return kron(pauli_p(p.n()).pow(e[0]) * pauli_q(p.n()).pow(e[1]),
                pauli_p(p.m()).pow(e[2]) * pauli_q(p.m()).pow(e[3]));
}

/// Order of A_i: n for i = 1, 2 and m for i = 3, 4.
inline Int generator_order(const GroupParams& p, int i) { return i <= 2 ? p.n() : p.m(); }

/// W with w12 = b, w21 = -b, w34 = a, w43 = -a; lambda_ij = exp(2 pi i w_ij / lcm(n, m)).
struct CommutationTable {
    GroupParams params;
    Mat4 w{};

    static CommutationTable make(const GroupParams& p)
    {
        if (!p.is_canonical())
            throw InvalidParams("commutation table needs d = gcd(n, m)");
        CommutationTable t{p, {}};
        t.w[0][1] = p.b();
        t.w[1][0] = -p.b();
        t.w[2][3] = p.a();
        t.w[3][2] = -p.a();
        return t;
    }

    /// lambda_ij, 1-based.
    Complex lambda(int i, int j) const { return root_of_unity(w[i - 1][j - 1], params.lcm()); }
};

struct CommutationReport {
    bool pass = true;
    double max_deviation = 0.0;
    std::array<Int, 4> worst{}; ///< (i, j, k, l) with the largest deviation
    std::size_t checked = 0;
};

/// Checks A_i^k A_j^l = lambda_ij^(kl) A_j^l A_i^k for all i, j and all k, l
/// in the ranges of the generator orders.
inline CommutationReport verify_commutation(const GroupParams& p, double tol = default_tolerance)
{
    auto table = CommutationTable::make(p);
    std::array<std::vector<ConcreteMatrix>, 4> powers;
    for (int i = 1; i <= 4; ++i) {
        ConcreteMatrix g = tensor_generator(p, i);
        ConcreteMatrix acc = ConcreteMatrix::identity(g.dim());
        for (Int k = 0; k < generator_order(p, i); ++k) {
            powers[static_cast<std::size_t>(i - 1)].push_back(acc);
            acc = acc * g;
        }
    }
    CommutationReport rep;
    for (int i = 1; i <= 4; ++i)
        for (int j = 1; j <= 4; ++j)
            for (Int k = 0; k < generator_order(p, i); ++k)
                for (Int l = 0; l < generator_order(p, j); ++l) {
                    const auto& ak = powers[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(k)];
                    const auto& al = powers[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(l)];
                    auto phase = proportional_to(ak * al, al * ak);
                    Complex expected = std::pow(table.lambda(i, j), static_cast<double>(k * l));
                    double dev = phase ? std::abs(*phase - expected) : 2.0;
                    ++rep.checked;
                    if (dev > rep.max_deviation) {
                        rep.max_deviation = dev;
                        rep.worst = {i, j, k, l};
                    }
                }
    rep.pass = rep.max_deviation < tol;
    return rep;
}

/// R = diag(I_m, Q_m^b, Q_m^(2b), ..., Q_m^((n-1)b)).
inline ConcreteMatrix r_matrix(const GroupParams& p)
{
    if (!p.is_canonical())
        throw InvalidParams("r_matrix needs d = gcd(n, m)");
    std::vector<Complex> diag;
    diag.reserve(static_cast<std::size_t>(p.n() * p.m()));
    for (Int k = 0; k < p.n(); ++k)
        for (Int l = 0; l < p.m(); ++l)
            diag.push_back(root_of_unity(k * p.b() % p.m() * l, p.m()));
    return ConcreteMatrix::diagonal(diag);
}

/// (F)_{jk} = omega^(jk) / sqrt(n).
inline ConcreteMatrix fourier_matrix(Int n)
{
    auto dim = static_cast<std::size_t>(n);
    ConcreteMatrix f(dim);
    const double s = 1.0 / std::sqrt(static_cast<double>(n));
    for (Int j = 0; j < n; ++j)
        for (Int k = 0; k < n; ++k)
            f(static_cast<std::size_t>(j), static_cast<std::size_t>(k)) = s * root_of_unity(j * k, n);
    return f;
}

/// (D)_{jj} = exp(pi i j (j + n) / n). Conjugation gives D P D^-1 = c Q^-1 P
/// for every n, odd or even.
inline ConcreteMatrix quadratic_phase_matrix(Int n)
{
    std::vector<Complex> diag(static_cast<std::size_t>(n));
    for (Int j = 0; j < n; ++j)
        diag[static_cast<std::size_t>(j)] = root_of_unity(j * (j + n), 2 * n);
    return ConcreteMatrix::diagonal(diag);
}

/// {F_n, D_n}.
inline std::vector<ConcreteMatrix> clifford_generators(Int n)
{
    if (n < 1)
        throw InvalidParams("dimension must be positive");
    return {fourier_matrix(n), quadratic_phase_matrix(n)};
}

/// {F_n (x) I, D_n (x) I, I (x) F_m, I (x) D_m}.
inline std::vector<ConcreteMatrix> local_normalizer_generators(const GroupParams& p)
{
    auto idn = ConcreteMatrix::identity(static_cast<std::size_t>(p.n()));
    auto idm = ConcreteMatrix::identity(static_cast<std::size_t>(p.m()));
    std::vector<ConcreteMatrix> out;
    for (const auto& g : clifford_generators(p.n()))
        out.push_back(kron(g, idm));
    for (const auto& g : clifford_generators(p.m()))
        out.push_back(kron(idn, g));
    return out;
}

namespace detail {

/// Column index of the single significant entry in each row, or empty if
/// the matrix is not monomial.
inline std::optional<std::vector<std::size_t>> monomial_support(const ConcreteMatrix& c)
{
    const double tol = c.tol() * std::max(c.max_abs(), 1.0);
    std::vector<std::size_t> cols(c.dim());
    for (std::size_t r = 0; r < c.dim(); ++r) {
        std::size_t hits = 0;
        for (std::size_t k = 0; k < c.dim(); ++k)
            if (std::abs(c(r, k)) > tol) {
                cols[r] = k;
                ++hits;
            }
        if (hits != 1)
            return std::nullopt;
    }
    return cols;
}

} // namespace detail

/// The class [A] with M A_j M^-1 proportional to prod_i A_i^(A_ij): column j
/// of A is the exponent vector of the conjugated generator A_j. Candidates
/// are searched over all of Z_n x Z_n x Z_m x Z_m, with the monomial
/// support pattern compared first.
inline SElement extract_exponent_matrix(const ConcreteMatrix& mat, const GroupParams& p)
{
    if (!p.is_canonical())
        throw InvalidParams("extraction needs d = gcd(n, m)");
    const auto nm = static_cast<std::size_t>(p.n() * p.m());
    if (mat.dim() != nm)
        throw ParamMismatch("extraction: matrix dimension is not nm");
    ConcreteMatrix inv = mat.inverse();
    const auto n = static_cast<std::size_t>(p.n()), m = static_cast<std::size_t>(p.m());

    Mat4 full{};
    for (int j = 1; j <= 4; ++j) {
        ConcreteMatrix c = mat * tensor_generator(p, j) * inv;
        c.set_tol(mat.tol());
        auto support = detail::monomial_support(c);
        if (!support)
            throw NotInNormalizer("conjugate of A" + std::to_string(j) + " is not monomial");
        std::optional<std::array<Int, 4>> found;
        for (Int e1 = 0; e1 < p.n() && !found; ++e1)
            for (Int e3 = 0; e3 < p.m() && !found; ++e3) {
                // P^e1 (x) P^e3 sends row (r1, r2) to column (r1 + e1, r2 + e3).
                bool pattern = true;
                for (std::size_t r = 0; r < nm && pattern; ++r) {
                    std::size_t r1 = r / m, r2 = r % m;
                    std::size_t col = ((r1 + static_cast<std::size_t>(e1)) % n) * m +
                                      (r2 + static_cast<std::size_t>(e3)) % m;
                    pattern = (*support)[r] == col;
                }
                if (!pattern)
                    continue;
                for (Int e2 = 0; e2 < p.n() && !found; ++e2)
                    for (Int e4 = 0; e4 < p.m() && !found; ++e4) {
                        std::array<Int, 4> e{e1, e2, e3, e4};
                        if (proportional_to(c, tensor_monomial(p, e)))
                            found = e;
                    }
            }
        if (!found)
            throw NotInNormalizer("conjugate of A" + std::to_string(j) +
                                  " matches no generator monomial");
        for (int i = 0; i < 4; ++i)
            full[i][j - 1] = (*found)[static_cast<std::size_t>(i)];
    }
    try {
        return SElement::from_full(p, full);
    } catch (const BlockDivisibility& e) {
        throw NotInNormalizer(std::string("exponent matrix is not in the monoid: ") + e.what());
    }
}

} // namespace hsym
