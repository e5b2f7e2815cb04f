#include "ckspec/clifford.hpp"

#include <cstdint>

namespace ckspec {

namespace {

Matrix pauli(char which) {
    Matrix m(2, 2);
    switch (which) {
    case 'x':
        m(0, 1) = Gauss(1);
        m(1, 0) = Gauss(1);
        break;
    case 'y':
        m(0, 1) = -Gauss::i();
        m(1, 0) = Gauss::i();
        break;
    case 'z':
        m(0, 0) = Gauss(1);
        m(1, 1) = Gauss(-1);
        break;
    default:
        m = Matrix::identity(2);
    }
    return m;
}

// Z^{(before)} (x) P (x) I^{(after)}
Matrix jw_tensor(int before, char p, int after) {
    Matrix m = Matrix::identity(1);
    for (int i = 0; i < before; ++i)
        m = kron(m, pauli('z'));
    if (p)
        m = kron(m, pauli(p));
    for (int i = 0; i < after; ++i)
        m = kron(m, pauli('1'));
    return m;
}

int sign_of_scalar(const Matrix& m, const Matrix& target) {
    if (m == target)
        return 1;
    if (m == -target)
        return -1;
    return 0;
}

struct SparseGaussInt {
    size_t pos;
    std::int64_t re, im;
};

std::vector<SparseGaussInt> to_sparse_int(const Matrix& m) {
    std::vector<SparseGaussInt> out;
    for (size_t r = 0; r < m.rows(); ++r)
        for (size_t c = 0; c < m.cols(); ++c) {
            const Gauss& z = m(r, c);
            if (z.is_zero())
                continue;
            if (z.re.get_den() != 1 || z.im.get_den() != 1 || !z.re.get_num().fits_slong_p() ||
                !z.im.get_num().fits_slong_p())
                throw Error(Error::Kind::Internal, "non-integral Clifford matrix entry");
            out.push_back({r * m.cols() + c, z.re.get_num().get_si(), z.im.get_num().get_si()});
        }
    return out;
}

// Checks sum_j n_j M_j == -sign * sum_j n_j T_j for every nonzero n in [-w, w]^k.
bool degree_reversal_window(const std::vector<Matrix>& M, const std::vector<Matrix>& T, int sign, int w) {
    size_t k = M.size();
    if (k == 0)
        return true;
    size_t cells = M[0].rows() * M[0].cols();
    std::vector<std::vector<SparseGaussInt>> ms, ts;
    for (size_t j = 0; j < k; ++j) {
        ms.push_back(to_sparse_int(M[j]));
        ts.push_back(to_sparse_int(T[j]));
    }
    std::vector<std::int64_t> re(cells), im(cells);
    std::vector<int> n(k, -w);
    while (true) {
        bool nonzero = false;
        for (int x : n)
            nonzero |= x != 0;
        if (nonzero) {
            for (size_t j = 0; j < k; ++j) {
                if (n[j] == 0)
                    continue;
                for (const auto& e : ms[j]) {
                    re[e.pos] += n[j] * e.re;
                    im[e.pos] += n[j] * e.im;
                }
                for (const auto& e : ts[j]) {
                    re[e.pos] += sign * n[j] * e.re;
                    im[e.pos] += sign * n[j] * e.im;
                }
            }
            bool ok = true;
            for (size_t j = 0; j < k; ++j) {
                for (const auto& e : ms[j]) {
                    ok &= re[e.pos] == 0 && im[e.pos] == 0;
                    re[e.pos] = im[e.pos] = 0;
                }
                for (const auto& e : ts[j]) {
                    ok &= re[e.pos] == 0 && im[e.pos] == 0;
                    re[e.pos] = im[e.pos] = 0;
                }
            }
            if (!ok)
                return false;
        }
        size_t i = 0;
        while (i < k && n[i] == w) {
            n[i] = -w;
            ++i;
        }
        if (i == k)
            break;
        ++n[i];
    }
    return true;
}

}  // namespace

size_t spinor_dim(int k) { return size_t(1) << (k / 2); }

int s_of_k(int k) { return (k / 2) * (k + 1) - k; }

CliffordGenerators generators(int k) {
    if (k < 1)
        throw Error(Error::Kind::Precondition, "Clifford rank must be positive");
    int m = k / 2;
    std::vector<Matrix> raw;
    for (int j = 1; j <= m; ++j) {
        raw.push_back(Gauss::i() * jw_tensor(j - 1, 'x', m - j));
        raw.push_back(Gauss::i() * jw_tensor(j - 1, 'y', m - j));
    }
    if (k % 2)
        raw.push_back(Gauss::i() * jw_tensor(m, 0, 0));

    std::vector<int> imaginary, real;
    for (size_t r = 0; r < raw.size(); ++r) {
        if (raw[r].conj() == -raw[r])
            imaginary.push_back(static_cast<int>(r));
        else if (raw[r].conj() == raw[r])
            real.push_back(static_cast<int>(r));
        else
            throw Error(Error::Kind::Internal, "generator is neither real nor imaginary");
    }
    bool odd_imaginary = k % 4 != 0;
    CliffordGenerators c;
    c.k = k;
    c.dim = spinor_dim(k);
    size_t next_im = 0, next_re = 0;
    for (int j = 1; j <= k; ++j) {
        bool want_imaginary = (j % 2 == 1) == odd_imaginary;
        auto& pool = want_imaginary ? imaginary : real;
        size_t& next = want_imaginary ? next_im : next_re;
        if (next >= pool.size())
            throw Error(Error::Kind::Internal, "conjugation pattern cannot be met for k = " + std::to_string(k));
        c.raw_index.push_back(pool[next]);
        c.gamma.push_back(raw[pool[next]]);
        ++next;
    }
    return c;
}

Matrix product_of_generators(const CliffordGenerators& c) {
    Matrix p = Matrix::identity(c.dim);
    for (const auto& g : c.gamma)
        p = p * g;
    return p;
}

Matrix chi(const CliffordGenerators& c) {
    Matrix p = Matrix::identity(c.dim);
    for (int j = 2; j <= c.k; j += 2)
        p = p * c.gamma[j - 1];
    return p;
}

Matrix grading(const CliffordGenerators& c) { return i_pow((c.k + 1) / 2) * product_of_generators(c); }

VolumeForm volume_form(const CliffordGenerators& c) {
    VolumeForm v;
    v.scalar = i_pow((c.k + 2) / 2);  // ceil((k+1)/2)
    v.omega = v.scalar * product_of_generators(c);
    v.omega_sq = v.omega * v.omega;
    v.squares_to_identity = v.omega_sq == Matrix::identity(c.dim);
    return v;
}

RealitySigns table_signs(int k) {
    static const int eps[8] = {1, 1, -1, -1, -1, -1, 1, 1};
    static const int eps_prime_odd[8] = {0, -1, 0, 1, 0, -1, 0, 1};
    static const int eps_dprime[8] = {1, 0, -1, 0, 1, 0, -1, 0};
    int r = ((k % 8) + 8) % 8;
    RealitySigns s;
    s.eps = eps[r];
    s.eps_prime = r % 2 ? eps_prime_odd[r] : 1;
    s.eps_dprime = eps_dprime[r];
    return s;
}

int degree_reversal_formula(int k) { return (((k + 1) / 2) * (k + 2)) % 2 ? -1 : 1; }

RealityData reality_operator(int k, int degree_window) {
    CliffordGenerators c = generators(k);
    return reality_data(c, chi(c), degree_window);
}

RealityData reality_data(const CliffordGenerators& c, const Matrix& x, int degree_window) {
    RealityData d;
    d.k = c.k;
    d.s_k = s_of_k(c.k);
    d.chi = x;
    d.chi_real = x.is_real();
    int m = c.k / 2;
    Gauss adj_sign = (m * (m + 1) / 2) % 2 ? Gauss(-1) : Gauss(1);
    d.chi_adjoint_rule = x.adjoint() == adj_sign * x;
    Matrix id = Matrix::identity(c.dim);
    d.antiunitary = x.adjoint() * x == id;

    // J^2 = chi conj(chi)
    d.signs.eps = sign_of_scalar(x * x.conj(), id);

    Matrix xinv = inverse(x);
    std::vector<Matrix> M, T;
    for (const auto& g : c.gamma) {
        Matrix t = Gauss::i() * g;
        M.push_back(x * t.conj() * xinv);
        T.push_back(t);
    }
    // chi conj(D_n) chi^{-1} = -eps' D_n with D_n = i sum_j n_j gamma^j
    int s = sign_of_scalar(M[0], -T[0]);
    for (size_t j = 1; j < M.size() && s != 0; ++j)
        if (M[j] != Gauss(-s) * T[j])
            s = 0;
    d.signs.eps_prime = s;
    d.degree_window = degree_window;
    d.degree_reversal_sign = s;
    d.degree_reversal_ok = s != 0 && degree_reversal_window(M, T, s, degree_window);

    if (c.k % 2 == 0) {
        Matrix gam = grading(c);
        d.signs.eps_dprime = sign_of_scalar(x * gam.conj() * xinv, gam);
        Matrix omega = volume_form(c).omega;
        d.omega_eps_dprime = sign_of_scalar(x * omega.conj() * xinv, omega);
    }
    return d;
}

std::vector<SignTableRow> sign_table_check(int kmax, int degree_window) {
    std::vector<SignTableRow> rows;
    for (int k = 1; k <= kmax; ++k) {
        RealityData d = reality_operator(k, degree_window);
        SignTableRow r;
        r.k = k;
        r.computed = d.signs;
        r.expected = table_signs(k);
        r.degree_reversal_ok = d.degree_reversal_ok && d.degree_reversal_sign == degree_reversal_formula(k);
        r.pass = r.computed == r.expected && r.degree_reversal_ok;
        rows.push_back(r);
    }
    return rows;
}

}  // namespace ckspec
