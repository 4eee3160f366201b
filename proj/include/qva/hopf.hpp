#pragma once

#include <array>
#include <vector>

#include "qva/tseries.hpp"

namespace qva {

/// Basis monomial g0^{e0} g1^{e1} ... E(m) of the Hopf algebra V, where
/// g_n = D^(n) h are the divided-power translates of the primitive h and
/// E(m) are the group-like lattice elements. The weight
/// sum (n+1)*e_n + |m| grades every truncation in the library.
struct VMono {
    int lattice = 0;
    std::map<int, int> gexp; // n -> exponent > 0

    static VMono one() { return VMono{}; }
    static VMono E(int m) { return VMono{m, {}}; }
    static VMono g(int n, int e = 1)
    {
        VMono v;
        if (e != 0) v.gexp[n] = e;
        return v;
    }
    static VMono h() { return g(0); }

    bool is_one() const { return lattice == 0 && gexp.empty(); }
    bool is_grouplike() const { return gexp.empty(); }

    int gweight() const
    {
        int w = 0;
        for (auto& [n, e] : gexp) w += (n + 1) * e;
        return w;
    }
    int weight() const { return gweight() + (lattice < 0 ? -lattice : lattice); }

    VMono times(const VMono& o) const
    {
        VMono r = *this;
        r.lattice += o.lattice;
        for (auto& [n, e] : o.gexp) {
            r.gexp[n] += e;
            if (r.gexp[n] == 0) r.gexp.erase(n);
        }
        return r;
    }

    auto operator<=>(const VMono& o) const = default;

    std::string str() const
    {
        std::string s;
        for (auto& [n, e] : gexp) {
            if (!s.empty()) s += " ";
            s += "g" + std::to_string(n);
            if (e != 1) s += "^" + std::to_string(e);
        }
        if (lattice != 0) {
            if (!s.empty()) s += " ";
            s += "E(" + std::to_string(lattice) + ")";
        }
        return s.empty() ? "1" : s;
    }
};

/// Finite linear combination of basis monomials with coefficients in C
/// (a t-series ring). Immutable-by-convention value type.
template <class C>
class VElemT {
public:
    using Terms = std::map<VMono, C>;

    VElemT() = default;
    VElemT(const VMono& m, const C& c)
    {
        if (!coeff_is_zero(c)) terms_[m] = c;
    }

    const Terms& terms() const& { return terms_; }
    Terms terms() && { return std::move(terms_); }
    bool is_zero() const { return terms_.empty(); }
    size_t size() const { return terms_.size(); }

    int max_weight() const
    {
        int w = 0;
        for (auto& [m, c] : terms_) w = std::max(w, m.weight());
        return w;
    }

    void add(const VMono& m, const C& c)
    {
        if (coeff_is_zero(c)) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_[m] = c;
        } else {
            it->second += c;
            if (coeff_is_zero(it->second)) terms_.erase(it);
        }
    }

    VElemT& operator+=(const VElemT& o)
    {
        for (auto& [m, c] : o.terms_) add(m, c);
        return *this;
    }
    friend VElemT operator+(VElemT a, const VElemT& b) { return a += b; }

    VElemT operator-() const
    {
        VElemT r;
        for (auto& [m, c] : terms_) r.terms_[m] = -c;
        return r;
    }
    friend VElemT operator-(VElemT a, const VElemT& b) { return a += -b; }
    VElemT& operator-=(const VElemT& o) { return *this += -o; }

    friend VElemT operator*(const VElemT& a, const VElemT& b)
    {
        VElemT r;
        for (auto& [ma, ca] : a.terms_)
            for (auto& [mb, cb] : b.terms_) r.add(ma.times(mb), ca * cb);
        return r;
    }
    VElemT& operator*=(const VElemT& o) { return *this = *this * o; }

    VElemT& scale(const C& c)
    {
        VElemT r;
        for (auto& [m, v] : terms_) r.add(m, v * c);
        return *this = r;
    }

    VElemT& scale_rat(const Rat& c)
    {
        if (qva::is_zero(c)) {
            terms_.clear();
            return *this;
        }
        for (auto& [m, v] : terms_) v.scale(c);
        return *this;
    }

    bool operator==(const VElemT& o) const
    {
        for (auto& [m, c] : terms_)
            if (!coeff_is_zero(c - o.coeff(m))) return false;
        for (auto& [m, c] : o.terms_)
            if (terms_.find(m) == terms_.end() && !coeff_is_zero(c)) return false;
        return true;
    }
    bool operator!=(const VElemT& o) const { return !(*this == o); }

    C coeff(const VMono& m) const
    {
        auto it = terms_.find(m);
        return it == terms_.end() ? C() : it->second;
    }

    /// Drops monomials above the weight cap.
    VElemT weight_truncated(int cap) const
    {
        VElemT r;
        for (auto& [m, c] : terms_)
            if (m.weight() <= cap) r.terms_.emplace(m, c);
        return r;
    }

private:
    Terms terms_;
};

using VElem = VElemT<ScalarSeries>;     // states: pure t-series coefficients
using VValued = VElemT<RatSeries>;      // states with rational-function coefficients

template <class C>
inline bool coeff_is_zero(const VElemT<C>& v) { return v.is_zero(); }

inline VElem v_one(int T) { return VElem(VMono::one(), ScalarSeries(Rat(1), T)); }
inline VElem v_mono(const VMono& m, int T) { return VElem(m, ScalarSeries(Rat(1), T)); }

inline VValued lift(const VElem& v, int T)
{
    VValued r;
    for (auto& [m, c] : v.terms()) {
        RatSeries s(T);
        for (auto& [k, a] : c.coeffs()) s.set(k, RatFun(a));
        r.add(m, s);
    }
    return r;
}

/// Extracts a state from a z-free V-valued element.
inline VElem lower(const VValued& v, int T)
{
    VElem r;
    for (auto& [m, c] : v.terms()) {
        ScalarSeries s(T);
        for (auto& [k, f] : c.coeffs()) {
            if (!f.is_constant()) throw std::runtime_error("coefficient is not a scalar");
            s.set(k, f.constant_value());
        }
        r.add(m, s);
    }
    return r;
}

/// Tensor power of V with coefficients in C.
template <int N, class C>
class VTensorT {
public:
    using Key = std::array<VMono, N>;
    using Terms = std::map<Key, C>;

    VTensorT() = default;
    VTensorT(const Key& k, const C& c)
    {
        if (!coeff_is_zero(c)) terms_[k] = c;
    }

    const Terms& terms() const& { return terms_; }
    Terms terms() && { return std::move(terms_); }
    bool is_zero() const { return terms_.empty(); }

    void add(const Key& k, const C& c)
    {
        if (coeff_is_zero(c)) return;
        auto it = terms_.find(k);
        if (it == terms_.end()) {
            terms_[k] = c;
        } else {
            it->second += c;
            if (coeff_is_zero(it->second)) terms_.erase(it);
        }
    }

    VTensorT& operator+=(const VTensorT& o)
    {
        for (auto& [k, c] : o.terms_) add(k, c);
        return *this;
    }
    friend VTensorT operator+(VTensorT a, const VTensorT& b) { return a += b; }
    VTensorT operator-() const
    {
        VTensorT r;
        for (auto& [k, c] : terms_) r.terms_[k] = -c;
        return r;
    }
    friend VTensorT operator-(VTensorT a, const VTensorT& b) { return a += -b; }

    bool operator==(const VTensorT& o) const
    {
        for (auto& [k, c] : terms_)
            if (!coeff_is_zero(c - o.coeff(k))) return false;
        for (auto& [k, c] : o.terms_)
            if (terms_.find(k) == terms_.end() && !coeff_is_zero(c)) return false;
        return true;
    }
    bool operator!=(const VTensorT& o) const { return !(*this == o); }

    C coeff(const Key& k) const
    {
        auto it = terms_.find(k);
        return it == terms_.end() ? C() : it->second;
    }

    /// Applies a permutation of the slots: result slot i receives the
    /// monomial from slot perm[i].
    VTensorT permuted(const std::array<int, N>& perm) const
    {
        VTensorT r;
        for (auto& [k, c] : terms_) {
            Key nk;
            for (int i = 0; i < N; ++i) nk[i] = k[perm[i]];
            r.add(nk, c);
        }
        return r;
    }

private:
    Terms terms_;
};

template <int N, class C>
inline bool coeff_is_zero(const VTensorT<N, C>& v) { return v.is_zero(); }

using VTensor2 = VTensorT<2, RatSeries>;
using VTensor3 = VTensorT<3, RatSeries>;
using VTensor4 = VTensorT<4, RatSeries>;

// ---------------------------------------------------------------------------
// Coproduct, counit, antipode, D-action
// ---------------------------------------------------------------------------

/// Splits of a monomial into n legs under the iterated coproduct, each with
/// its multinomial coefficient. Group-likes copy to every leg; each g_k^e
/// distributes its e factors over the legs.
inline void coproduct_splits_impl(const VMono& m, int legs,
                                  std::vector<std::pair<std::vector<VMono>, Rat>>& out)
{
    std::vector<std::pair<std::vector<VMono>, Rat>> acc;
    {
        std::vector<VMono> base(legs, VMono::E(m.lattice));
        acc.push_back({base, Rat(1)});
    }
    for (auto& [n, e] : m.gexp) {
        std::vector<std::pair<std::vector<VMono>, Rat>> next;
        // compositions of e into `legs` parts
        std::vector<int> comp(legs, 0);
        auto rec = [&](auto&& self, int pos, int left) -> void {
            if (pos == legs - 1) {
                comp[pos] = left;
                Rat mult = factorial(e);
                for (int c : comp) mult /= factorial(c);
                for (auto& [legsv, coef] : acc) {
                    auto nl = legsv;
                    for (int i = 0; i < legs; ++i)
                        if (comp[i] > 0) nl[i] = nl[i].times(VMono::g(n, comp[i]));
                    next.push_back({nl, coef * mult});
                }
                return;
            }
            for (int c = 0; c <= left; ++c) {
                comp[pos] = c;
                self(self, pos + 1, left - c);
            }
        };
        rec(rec, 0, e);
        acc = std::move(next);
    }
    out = std::move(acc);
}

inline std::vector<std::pair<std::vector<VMono>, Rat>> coproduct_splits(const VMono& m, int legs)
{
    std::vector<std::pair<std::vector<VMono>, Rat>> out;
    coproduct_splits_impl(m, legs, out);
    return out;
}

template <class C>
inline VTensorT<2, C> coproduct(const VElemT<C>& v)
{
    VTensorT<2, C> r;
    for (auto& [m, c] : v.terms())
        for (auto& [legs, mult] : coproduct_splits(m, 2)) {
            C cc = c;
            cc.scale(mult);
            r.add({legs[0], legs[1]}, cc);
        }
    return r;
}

inline Rat counit(const VMono& m) { return m.gexp.empty() ? Rat(1) : Rat(0); }

template <class C>
inline C counit(const VElemT<C>& v)
{
    C r{};
    bool first = true;
    for (auto& [m, c] : v.terms()) {
        if (!m.gexp.empty()) continue;
        if (first) {
            r = c;
            first = false;
        } else {
            r += c;
        }
    }
    return r;
}

inline std::pair<VMono, Rat> antipode(const VMono& m)
{
    VMono r = m;
    r.lattice = -r.lattice;
    int flips = 0;
    for (auto& [n, e] : r.gexp) flips += e;
    return {r, flips % 2 == 0 ? Rat(1) : Rat(-1)};
}

template <class C>
inline VElemT<C> antipode(const VElemT<C>& v)
{
    VElemT<C> r;
    for (auto& [m, c] : v.terms()) {
        auto [am, sign] = antipode(m);
        C cc = c;
        cc.scale(sign);
        r.add(am, cc);
    }
    return r;
}

/// D acting on a monomial: derivation with D g_n = (n+1) g_{n+1} and
/// D E(m) = m g0 E(m).
inline std::vector<std::pair<VMono, Rat>> d_mono(const VMono& m)
{
    std::vector<std::pair<VMono, Rat>> out;
    if (m.lattice != 0) out.push_back({m.times(VMono::g(0)), Rat(m.lattice)});
    for (auto& [n, e] : m.gexp) {
        VMono r = m;
        r.gexp[n] -= 1;
        if (r.gexp[n] == 0) r.gexp.erase(n);
        r = r.times(VMono::g(n + 1));
        out.push_back({r, Rat(e) * Rat(n + 1)});
    }
    return out;
}

template <class C>
inline VElemT<C> d_action(const VElemT<C>& v)
{
    VElemT<C> r;
    for (auto& [m, c] : v.terms())
        for (auto& [dm, coef] : d_mono(m)) {
            C cc = c;
            cc.scale(coef);
            r.add(dm, cc);
        }
    return r;
}

/// Divided power D^(k) = D^k / k!.
template <class C>
inline VElemT<C> dp_action(const VElemT<C>& v, int k)
{
    VElemT<C> r = v;
    for (int i = 1; i <= k; ++i) {
        r = d_action(r);
        r.scale_rat(Rat(1) / Rat(i));
    }
    return r;
}

/// e^{vD} a as a polynomial in the variable v with V coefficients, keeping
/// exactly the output monomials of weight <= cap. D raises weight by one,
/// so the truncation is exact for every kept monomial.
inline VValued exp_zd(const VElem& a, Var v, int cap, int T)
{
    VValued out;
    VElem cur = a;
    for (int k = 0;; ++k) {
        VElem kept = cur.weight_truncated(cap);
        for (auto& [m, c] : kept.terms()) {
            RatSeries s(T);
            for (auto& [o, coef] : c.coeffs())
                s.add(o, RatFun(Poly(coef, exp_of(v, static_cast<int16_t>(k)))));
            out.add(m, s);
        }
        cur = d_action(cur);
        cur.scale_rat(Rat(1) / Rat(k + 1));
        cur = cur.weight_truncated(cap);
        if (cur.is_zero()) break;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Graded basis enumeration
// ---------------------------------------------------------------------------

namespace detail {
inline void g_monomials_of_weight(int w, int max_part, VMono cur,
                                  std::vector<VMono>& out)
{
    if (w == 0) {
        out.push_back(cur);
        return;
    }
    for (int part = std::min(w, max_part); part >= 1; --part) {
        VMono next = cur.times(VMono::g(part - 1)); // part = n+1
        g_monomials_of_weight(w - part, part, next, out);
    }
}
} // namespace detail

/// All basis monomials of exact weight w.
inline std::vector<VMono> basis_of_weight(int w)
{
    std::vector<VMono> out;
    for (int m = -w; m <= w; ++m) {
        int rest = w - (m < 0 ? -m : m);
        std::vector<VMono> gs;
        detail::g_monomials_of_weight(rest, rest, VMono::E(m), gs);
        out.insert(out.end(), gs.begin(), gs.end());
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// All basis monomials of weight <= w.
inline std::vector<VMono> basis_up_to_weight(int w)
{
    std::vector<VMono> out;
    for (int k = 0; k <= w; ++k) {
        auto b = basis_of_weight(k);
        out.insert(out.end(), b.begin(), b.end());
    }
    return out;
}

} // namespace qva
