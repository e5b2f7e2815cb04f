#include "support.hpp"

#include "ckspec/clifford.hpp"

#include <doctest.h>

#include <random>

using namespace ckspec;

namespace {

Matrix transpose_of(const Matrix& m) { return m.transpose(); }

std::vector<Gauss> random_vector(size_t n, std::mt19937& rng) {
    std::vector<Gauss> v;
    for (size_t i = 0; i < n; ++i)
        v.push_back(testsupport::random_gauss(rng));
    return v;
}

std::vector<Gauss> matvec(const Matrix& m, const std::vector<Gauss>& x) {
    std::vector<Gauss> y(m.rows());
    for (size_t r = 0; r < m.rows(); ++r)
        for (size_t c = 0; c < m.cols(); ++c)
            y[r] += m(r, c) * x[c];
    return y;
}

Gauss inner(const std::vector<Gauss>& x, const std::vector<Gauss>& y) {
    Gauss s;
    for (size_t i = 0; i < x.size(); ++i)
        s += x[i].conj() * y[i];
    return s;
}

std::vector<Gauss> conj(std::vector<Gauss> x) {
    for (auto& z : x)
        z = z.conj();
    return x;
}

}  // namespace

TEST_SUITE("clifford") {
    TEST_CASE("generators satisfy the anticommutation and adjoint rules for k = 1..8") {
        for (int k = 1; k <= 8; ++k) {
            CAPTURE(k);
            CliffordGenerators c = generators(k);
            REQUIRE(c.gamma.size() == static_cast<size_t>(k));
            CHECK(c.dim == (size_t{1} << (k / 2)));
            Matrix id = Matrix::identity(c.dim);
            for (int j = 0; j < k; ++j) {
                CHECK(c.gamma[j].adjoint() == -c.gamma[j]);
                for (int l = 0; l < k; ++l) {
                    Matrix anti = c.gamma[j] * c.gamma[l] + c.gamma[l] * c.gamma[j];
                    CHECK(anti == (j == l ? Gauss(-2) * id : Matrix(c.dim, c.dim)));
                }
            }
        }
    }

    TEST_CASE("generators follow the odd/even conjugation pattern") {
        for (int k = 1; k <= 8; ++k) {
            CAPTURE(k);
            CliffordGenerators c = generators(k);
            bool swapped = k % 4 == 0;
            for (int j = 1; j <= k; ++j) {
                const Matrix& g = c.gamma[j - 1];
                bool odd_slot = (j % 2 == 1) != swapped;
                if (odd_slot) {
                    CHECK(transpose_of(g) == g);
                    CHECK(g.conj() == -g);
                } else {
                    CHECK(g.is_real());
                    CHECK(transpose_of(g) == -g);
                }
            }
        }
    }

    TEST_CASE("small k examples") {
        CliffordGenerators one = generators(1);
        CHECK(one.gamma[0](0, 0) == Gauss::i());
        CHECK(one.gamma[0] * one.gamma[0] == Matrix::scalar(1, Gauss(-1)));

        CliffordGenerators two = generators(2);
        CHECK((two.gamma[0] * two.gamma[1] + two.gamma[1] * two.gamma[0]).is_zero());

        // (g1 g2 g3)^2 = +1 from the anticommutation rules, so the product is +-Id
        Gauss c;
        REQUIRE(product_of_generators(generators(3)).is_scalar(&c));
        CHECK((c == Gauss(1) || c == Gauss(-1)));
    }

    TEST_CASE("volume form") {
        VolumeForm w1 = volume_form(generators(1));
        CHECK(w1.omega == Matrix::scalar(1, Gauss(-1)));
        CHECK(w1.omega_sq == Matrix::identity(1));

        // reported, not normalized: the stated scalar squares to -Id at k = 2
        VolumeForm w2 = volume_form(generators(2));
        CHECK(w2.omega_sq == Matrix::scalar(2, Gauss(-1)));
        CHECK_FALSE(w2.squares_to_identity);

        for (int k = 2; k <= 8; k += 2) {
            CliffordGenerators c = generators(k);
            Matrix w = volume_form(c).omega;
            for (int j = 0; j < k; ++j) {
                CHECK(w * c.gamma[j] == -(c.gamma[j] * w));
                for (int l = 0; l < k; ++l) {
                    Matrix even = c.gamma[j] * c.gamma[l];
                    CHECK(w * even == even * w);
                }
            }
            Matrix gam = grading(c);
            CHECK(gam * gam == Matrix::identity(c.dim));
        }
    }

    TEST_CASE("reality operator examples") {
        RealityData r1 = reality_operator(1);
        CHECK(r1.signs.eps == 1);
        CHECK(r1.signs.eps_prime == -1);
        RealityData r2 = reality_operator(2);
        CHECK(r2.signs == RealitySigns{-1, 1, -1});
        RealityData r7 = reality_operator(7);
        CHECK(r7.signs.eps == 1);
        CHECK(r7.signs.eps_prime == 1);
        CHECK(reality_operator(4).signs.eps_dprime == 1);
    }

    TEST_CASE("sign table k = 1..8 with degree reversal") {
        auto rows = sign_table_check(8);
        REQUIRE(rows.size() == 8);
        for (const auto& r : rows) {
            CAPTURE(r.k);
            CHECK(r.computed == r.expected);
            CHECK(r.expected == table_signs(r.k));
            CHECK(r.degree_reversal_ok);
            CHECK(r.pass);
        }
    }

    TEST_CASE("mutated chi flips a sign") {
        for (int k = 2; k <= 8; ++k) {
            CAPTURE(k);
            CliffordGenerators c = generators(k);
            // chi with its last factor dropped
            Matrix mutated = Matrix::identity(c.dim);
            for (int j = 2; j + 2 <= 2 * (k / 2); j += 2)
                mutated = mutated * c.gamma[j - 1];
            RealityData d = reality_data(c, mutated);
            CHECK_FALSE(d.signs == table_signs(k));
        }
    }

    TEST_CASE("chi invariants and s(k) parity") {
        for (int k = 1; k <= 8; ++k) {
            CAPTURE(k);
            RealityData d = reality_operator(k);
            CHECK(d.chi_real);
            CHECK(d.antiunitary);
            CHECK(d.chi_adjoint_rule);
            CHECK(d.s_k == s_of_k(k));
            CHECK((d.s_k % 2 == 0) == (k % 4 == 0));
        }
    }

    TEST_CASE("property: J is antiunitary on random spinors") {
        std::mt19937 rng(1001);
        for (int k = 1; k <= 6; ++k) {
            CliffordGenerators c = generators(k);
            Matrix x = chi(c);
            for (int t = 0; t < 20; ++t) {
                auto u = random_vector(c.dim, rng), v = random_vector(c.dim, rng);
                auto ju = matvec(x, conj(u)), jv = matvec(x, conj(v));
                CHECK(inner(ju, jv) == inner(u, v).conj());
            }
        }
    }
}
