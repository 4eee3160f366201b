#pragma once

#include "qva/qva.hpp"

namespace qva {

/// Permutations of {0,..,n-1} by images; composition acts right first.
template <int N>
using PermN = std::array<int, N>;

template <std::size_t N>
inline PermN<N> perm_identity()
{
    PermN<N> p;
    for (std::size_t i = 0; i < N; ++i) p[i] = static_cast<int>(i);
    return p;
}

template <std::size_t N>
inline PermN<N> perm_compose(const PermN<N>& f, const PermN<N>& g) // f after g
{
    PermN<N> r;
    for (std::size_t i = 0; i < N; ++i) r[i] = f[g[i]];
    return r;
}

template <std::size_t N>
inline PermN<N> perm_inverse(const PermN<N>& f)
{
    PermN<N> r;
    for (std::size_t i = 0; i < N; ++i) r[f[i]] = static_cast<int>(i);
    return r;
}

template <std::size_t N>
inline PermN<N> perm_transposition(int i) // (i, i+1), 0-based
{
    PermN<N> p = perm_identity<N>();
    std::swap(p[i], p[i + 1]);
    return p;
}

/// Realization of the braiding map attached to a word in the simple
/// transpositions: a composition of slot permutations and S^{(tau)}
/// applications at recorded variable pairs, assembled through the
/// semidirect product of maps and permutations. The realized map depends
/// only on the underlying permutation, which the word-independence tests
/// certify.
template <int N>
class PermBraiding {
public:
    struct Step {
        bool is_perm;
        PermN<N> perm;  // tensor slot permutation (result slot i <- input slot perm[i])
        int slot;       // S application on (slot, slot+1)
        int va, vb;     // 0-based variable indices of the braiding values
    };

    /// Builds S^f from a word (1-based letters i for the transposition
    /// (i, i+1)); the empty word gives the identity map.
    static PermBraiding from_word(const std::vector<int>& word)
    {
        PermBraiding acc; // identity element
        for (auto it = word.rbegin(); it != word.rend(); ++it)
            acc = acc.times(letter(*it - 1));
        return acc;
    }

    PermN<N> permutation() const { return perm_inverse(g_); }

    /// Applies the realized map with the given braiding bicharacter.
    VTensorT<N, RatSeries> apply(const Bicharacter& R, const VTensorT<N, RatSeries>& in) const
    {
        VTensorT<N, RatSeries> cur = in;
        for (auto& st : steps_) {
            if (st.is_perm) {
                cur = cur.permuted(st.perm);
            } else {
                Var zs[4] = {Var::z1, Var::z2, Var::z3, Var::z4};
                cur = apply_smap<N>(R, subst_pair(zs[st.va], zs[st.vb]), cur, st.slot, st.slot + 1);
            }
        }
        return cur;
    }

    /// Renames the variables: index v -> g(v).
    PermBraiding renamed(const PermN<N>& g) const
    {
        PermBraiding r = *this;
        for (auto& st : r.steps_)
            if (!st.is_perm) {
                st.va = g[st.va];
                st.vb = g[st.vb];
            }
        return r;
    }

private:
    std::vector<Step> steps_; // applied in order
    PermN<N> g_ = perm_identity<N>(); // second semidirect component; realized f = g^{-1}

    static PermBraiding letter(int i)
    {
        PermBraiding e;
        Step s;
        s.is_perm = false;
        s.slot = i;
        s.va = i;
        s.vb = i + 1;
        e.steps_.push_back(s);
        e.g_ = perm_transposition<static_cast<std::size_t>(N)>(i);
        return e;
    }

    /// Semidirect product (A, g).(B, h) = (A o sigma_g^{-1} o B_{g(z)} o sigma_g, g h).
    PermBraiding times(const PermBraiding& o) const
    {
        PermBraiding r;
        bool trivial = g_ == perm_identity<N>();
        if (!trivial) {
            Step pre;
            pre.is_perm = true;
            pre.perm = g_;
            r.steps_.push_back(pre);
        }
        PermBraiding ob = o.renamed(g_);
        for (auto& st : ob.steps_) r.steps_.push_back(st);
        if (!trivial) {
            Step post;
            post.is_perm = true;
            post.perm = perm_inverse(g_);
            r.steps_.push_back(post);
        }
        for (auto& st : steps_) r.steps_.push_back(st);
        r.g_ = perm_compose(g_, o.g_);
        return r;
    }
};

/// Reduced words for a permutation, by descent search; up to max_words
/// distinct ones when they exist.
template <std::size_t N>
inline std::vector<std::vector<int>> reduced_words(const PermN<N>& f, int max_words = 2)
{
    // enumerate all reduced words by recursive descent search
    std::vector<std::vector<int>> out;
    std::vector<int> word;
    auto len = [](const PermN<N>& p) {
        int inv = 0;
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t j = i + 1; j < N; ++j)
                if (p[i] > p[j]) ++inv;
        return inv;
    };
    auto rec = [&](auto&& self, PermN<N> cur) -> void {
        if (static_cast<int>(out.size()) >= max_words) return;
        int l = len(cur);
        if (l == 0) {
            auto w = word;
            std::reverse(w.begin(), w.end());
            out.push_back(w);
            return;
        }
        for (std::size_t i = 0; i + 1 < N; ++i) {
            PermN<N> next = perm_compose(cur, perm_transposition<static_cast<std::size_t>(N)>(i)); // cur * w_i
            if (len(next) < l) {
                word.push_back(static_cast<int>(i) + 1);
                self(self, next);
                word.pop_back();
                if (static_cast<int>(out.size()) >= max_words) return;
            }
        }
    };
    rec(rec, f);
    return out;
}

} // namespace qva
