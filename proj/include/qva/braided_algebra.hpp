#pragma once

#include <functional>
#include <string>
#include <vector>

#include "qva/rational.hpp"

namespace qva {

/// A finite-dimensional unital algebra with a braiding on the square,
/// given by structure constants over the rationals. Small enough to check
/// every axiom by exhaustive enumeration of basis tuples.
struct BraidedAlgebra {
    std::string name;
    int dim = 0;
    int unit = 0;
    std::vector<std::string> labels;
    // m(i,j) = sum_k mult[i][j][k] e_k
    std::vector<std::vector<std::vector<Rat>>> mult;
    // S(e_i x e_j) = sum_{k,l} braid[i][j][(k,l)] e_k x e_l
    std::vector<std::vector<std::map<std::pair<int, int>, Rat>>> braid;

    using Vec = std::map<int, Rat>;
    using Ten2 = std::map<std::pair<int, int>, Rat>;
    using Ten3 = std::map<std::tuple<int, int, int>, Rat>;

    Vec product(int i, int j) const
    {
        Vec r;
        for (int k = 0; k < dim; ++k)
            if (!is_zero(mult[i][j][k])) r[k] = mult[i][j][k];
        return r;
    }

    Ten2 smap(const Ten2& in) const
    {
        Ten2 r;
        for (auto& [ij, c] : in)
            for (auto& [kl, d] : braid[ij.first][ij.second]) add(r, kl, c * d);
        return r;
    }

    /// S acting on two chosen slots of a three-tensor.
    Ten3 smap3(const Ten3& in, int sa, int sb) const
    {
        Ten3 r;
        for (auto& [key, c] : in) {
            int idx[3] = {std::get<0>(key), std::get<1>(key), std::get<2>(key)};
            for (auto& [kl, d] : braid[idx[sa]][idx[sb]]) {
                int out[3] = {idx[0], idx[1], idx[2]};
                out[sa] = kl.first;
                out[sb] = kl.second;
                add(r, {out[0], out[1], out[2]}, c * d);
            }
        }
        return r;
    }

    static Ten3 tau3(const Ten3& in, int sa, int sb)
    {
        Ten3 r;
        for (auto& [key, c] : in) {
            int idx[3] = {std::get<0>(key), std::get<1>(key), std::get<2>(key)};
            std::swap(idx[sa], idx[sb]);
            add(r, {idx[0], idx[1], idx[2]}, c);
        }
        return r;
    }

    Vec mul2(const Ten2& in) const
    {
        Vec r;
        for (auto& [ij, c] : in)
            for (auto& [k, d] : product(ij.first, ij.second)) add(r, k, c * d);
        return r;
    }

    Vec mul3(const Ten3& in) const // m(1 x m)
    {
        Vec r;
        for (auto& [key, c] : in) {
            auto [i, j, k] = key;
            for (auto& [jk, d] : product(j, k))
                for (auto& [out, e] : product(i, jk)) add(r, out, c * d * e);
        }
        return r;
    }

    template <class K>
    static void add(std::map<K, Rat>& m, const K& k, const Rat& c)
    {
        if (is_zero(c)) return;
        auto it = m.find(k);
        if (it == m.end()) {
            m[k] = c;
        } else {
            it->second += c;
            if (is_zero(it->second)) m.erase(it);
        }
    }
};

/// Super-commutative instance: the exterior algebra on two odd generators,
/// with the sign braiding on homogeneous elements.
inline BraidedAlgebra super_instance()
{
    BraidedAlgebra A;
    A.name = "super";
    A.dim = 4;
    A.unit = 0;
    A.labels = {"1", "p", "q", "pq"};
    int par[4] = {0, 1, 1, 0};
    A.mult.assign(4, std::vector<std::vector<Rat>>(4, std::vector<Rat>(4, Rat(0))));
    auto set = [&](int i, int j, int k, int c) { A.mult[i][j][k] = Rat(c); };
    for (int i = 0; i < 4; ++i) {
        set(0, i, i, 1);
        if (i != 0) set(i, 0, i, 1);
    }
    set(1, 2, 3, 1);  // p q = pq
    set(2, 1, 3, -1); // q p = -pq
    // p p = q q = 0; anything with pq beyond the unit vanishes except:
    // p * pq = 0, pq * p = 0, etc. (left zero)
    A.braid.assign(4, std::vector<std::map<std::pair<int, int>, Rat>>(4));
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            A.braid[i][j][{i, j}] = (par[i] * par[j]) % 2 == 0 ? Rat(1) : Rat(-1);
    return A;
}

/// Group algebra of Z2 x Z2 with a non-symmetric bicharacter, multiplied
/// through the twist: m_r(g x h) = r(g x h) gh, braided by
/// R(g x h) = r(h x g)/r(g x h).
inline BraidedAlgebra twisted_group_instance()
{
    BraidedAlgebra A;
    A.name = "twisted-group";
    A.dim = 4;
    A.unit = 0;
    A.labels = {"(0,0)", "(1,0)", "(0,1)", "(1,1)"};
    auto bits = [](int g) { return std::pair<int, int>{g & 1, (g >> 1) & 1}; };
    auto r = [&](int g, int h) {
        auto [g1, g2] = bits(g);
        auto [h1, h2] = bits(h);
        return (g1 * h2) % 2 == 0 ? Rat(1) : Rat(-1);
    };
    A.mult.assign(4, std::vector<std::vector<Rat>>(4, std::vector<Rat>(4, Rat(0))));
    A.braid.assign(4, std::vector<std::map<std::pair<int, int>, Rat>>(4));
    for (int g = 0; g < 4; ++g)
        for (int h = 0; h < 4; ++h) {
            A.mult[g][h][g ^ h] = r(g, h);
            A.braid[g][h][{g, h}] = r(h, g) / r(g, h);
        }
    return A;
}

/// Axiom sweep over all basis tuples. Returns the failing axiom names.
inline std::vector<std::string> braided_algebra_check(const BraidedAlgebra& A)
{
    std::vector<std::string> failures;
    auto basis2 = [&](int i, int j) {
        BraidedAlgebra::Ten2 t;
        t[{i, j}] = Rat(1);
        return t;
    };
    auto basis3 = [&](int i, int j, int k) {
        BraidedAlgebra::Ten3 t;
        t[{i, j, k}] = Rat(1);
        return t;
    };

    // vacuum
    for (int i = 0; i < A.dim; ++i) {
        if (A.smap(basis2(i, A.unit)) != basis2(i, A.unit) ||
            A.smap(basis2(A.unit, i)) != basis2(A.unit, i)) {
            failures.push_back("vacuum");
            break;
        }
    }
    // braiding axiom m3 S^{12} = m3 tau^{12}
    for (int i = 0; i < A.dim; ++i)
        for (int j = 0; j < A.dim; ++j)
            for (int k = 0; k < A.dim; ++k)
                if (A.mul3(A.smap3(basis3(i, j, k), 0, 1)) !=
                    A.mul3(BraidedAlgebra::tau3(basis3(i, j, k), 0, 1))) {
                    failures.push_back("braiding");
                    goto braiding_done;
                }
braiding_done:
    // unitarity S tau S tau = id
    for (int i = 0; i < A.dim; ++i)
        for (int j = 0; j < A.dim; ++j) {
            BraidedAlgebra::Ten2 t = basis2(j, i); // tau applied
            t = A.smap(t);
            BraidedAlgebra::Ten2 t2;
            for (auto& [kl, c] : t) BraidedAlgebra::add(t2, {kl.second, kl.first}, c);
            t2 = A.smap(t2);
            if (t2 != basis2(i, j)) {
                failures.push_back("unitarity");
                goto unit_done;
            }
        }
unit_done:
    // Yang-Baxter
    for (int i = 0; i < A.dim; ++i)
        for (int j = 0; j < A.dim; ++j)
            for (int k = 0; k < A.dim; ++k) {
                auto in = basis3(i, j, k);
                auto lhs = A.smap3(A.smap3(A.smap3(in, 1, 2), 0, 2), 0, 1);
                auto rhs = A.smap3(A.smap3(A.smap3(in, 0, 1), 0, 2), 1, 2);
                if (lhs != rhs) {
                    failures.push_back("yang-baxter");
                    goto yb_done;
                }
            }
yb_done:
    // compatibility: S m^{12} = m^{12} S^{23} S^{13} and mirrored
    for (int i = 0; i < A.dim; ++i)
        for (int j = 0; j < A.dim; ++j)
            for (int k = 0; k < A.dim; ++k) {
                BraidedAlgebra::Ten2 lhs;
                for (auto& [p, c] : A.product(i, j))
                    for (auto& [kl, d] : A.braid[p][k]) BraidedAlgebra::add(lhs, kl, c * d);
                auto t = A.smap3(A.smap3(basis3(i, j, k), 0, 2), 1, 2);
                BraidedAlgebra::Ten2 rhs;
                for (auto& [key, c] : t) {
                    auto [x, y, z] = key;
                    for (auto& [p, d] : A.product(x, y)) BraidedAlgebra::add(rhs, {p, z}, c * d);
                }
                if (lhs != rhs) {
                    failures.push_back("compat-left");
                    goto compat_done;
                }
                BraidedAlgebra::Ten2 lhs2;
                for (auto& [p, c] : A.product(j, k))
                    for (auto& [kl, d] : A.braid[i][p]) BraidedAlgebra::add(lhs2, kl, c * d);
                auto t2 = A.smap3(A.smap3(basis3(i, j, k), 0, 1), 0, 2);
                BraidedAlgebra::Ten2 rhs2;
                for (auto& [key, c] : t2) {
                    auto [x, y, z] = key;
                    for (auto& [p, d] : A.product(y, z)) BraidedAlgebra::add(rhs2, {x, p}, c * d);
                }
                if (lhs2 != rhs2) {
                    failures.push_back("compat-right");
                    goto compat_done;
                }
            }
compat_done:
    // derived: braided commutativity m S = m tau
    for (int i = 0; i < A.dim; ++i)
        for (int j = 0; j < A.dim; ++j)
            if (A.mul2(A.smap(basis2(i, j))) != A.product(j, i)) {
                failures.push_back("braided-commutativity");
                goto bc_done;
            }
bc_done:
    // derived: associativity
    for (int i = 0; i < A.dim; ++i)
        for (int j = 0; j < A.dim; ++j)
            for (int k = 0; k < A.dim; ++k) {
                BraidedAlgebra::Vec lhs;
                for (auto& [p, c] : A.product(i, j))
                    for (auto& [q, d] : A.product(p, k)) BraidedAlgebra::add(lhs, q, c * d);
                BraidedAlgebra::Vec rhs;
                for (auto& [p, c] : A.product(j, k))
                    for (auto& [q, d] : A.product(i, p)) BraidedAlgebra::add(rhs, q, c * d);
                if (lhs != rhs) {
                    failures.push_back("associativity");
                    goto assoc_done;
                }
            }
assoc_done:
    return failures;
}

/// m_n o S(f) = m_n for every f in S3, via words in the simple
/// transpositions; S(f) realized as an anti-homomorphic product of
/// S tau steps.
inline bool braided_sn_multiplication_check(const BraidedAlgebra& A)
{
    using Ten3 = BraidedAlgebra::Ten3;
    auto stau = [&](const Ten3& in, int slot) {
        return A.smap3(BraidedAlgebra::tau3(in, slot, slot + 1), slot, slot + 1);
    };
    std::vector<std::vector<int>> words = {{}, {0}, {1}, {0, 1}, {1, 0}, {0, 1, 0}};
    for (auto& w : words)
        for (int i = 0; i < A.dim; ++i)
            for (int j = 0; j < A.dim; ++j)
                for (int k = 0; k < A.dim; ++k) {
                    Ten3 t;
                    t[{i, j, k}] = Rat(1);
                    // anti-homomorphism: apply the word letters right to left
                    for (auto it = w.rbegin(); it != w.rend(); ++it) t = stau(t, *it);
                    Ten3 in;
                    in[{i, j, k}] = Rat(1);
                    if (A.mul3(t) != A.mul3(in)) return false;
                }
    return true;
}

} // namespace qva
