#pragma once

#include <optional>

#include "qva/bichar.hpp"
#include "qva/distribution.hpp"

namespace qva {

struct VOViolation : std::runtime_error {
    explicit VOViolation(const std::string& m) : std::runtime_error(m) {}
};
struct RouteMismatch : std::runtime_error {
    explicit RouteMismatch(const std::string& m) : std::runtime_error(m) {}
};

/// All computations are exact within this envelope: t-series truncated at
/// t_order, z-exponent windows of +-z_window where expansions are involved,
/// and output states of weight <= weight_cap.
struct TruncationSpec {
    int t_order = 3;
    int z_window = 4;
    int weight_cap = 5;
};

using VDist = Dist<VValued>;

/// Drops output monomials above the weight cap.
inline VValued weight_filter(const VValued& v, int cap)
{
    VValued r;
    for (auto& [m, c] : v.terms())
        if (m.weight() <= cap) r.add(m, c);
    return r;
}

inline VValued gweight_filter(const VValued& v, int cap)
{
    VValued r;
    for (auto& [m, c] : v.terms())
        if (m.gweight() <= cap) r.add(m, c);
    return r;
}

/// e^{vD} with the product-leg truncation: the g-weight is additive under
/// multiplication, so capping legs by g-weight keeps multi-leg products
/// exact for every output monomial of weight <= cap.
inline VValued exp_zd_g(const VElem& a, std::optional<Var> v, int gcap, int T)
{
    if (!v) { // variable pinned to zero: e^{0 D} = id
        VValued r;
        for (auto& [m, c] : a.terms())
            if (m.gweight() <= gcap) {
                RatSeries s(T);
                for (auto& [o, coef] : c.coeffs()) s.set(o, RatFun(coef));
                r.add(m, s);
            }
        return r;
    }
    VValued out;
    VElem cur = a;
    for (int k = 0;; ++k) {
        bool any = false;
        for (auto& [m, c] : cur.terms()) {
            if (m.gweight() > gcap) continue;
            any = true;
            RatSeries s(T);
            for (auto& [o, coef] : c.coeffs())
                s.add(o, RatFun(Poly(coef, exp_of(*v, static_cast<int16_t>(k)))));
            out.add(m, s);
        }
        if (!any && k > 0) break;
        cur = d_action(cur);
        cur.scale_rat(Rat(1) / Rat(k + 1));
        if (cur.is_zero()) break;
    }
    return out;
}

/// The quantum vertex algebra generated by an invertible bicharacter that
/// is regular at z2 = 0. Holds the derived braiding and translation
/// bicharacters and the truncation envelope.
class VertexAlgebra {
public:
    VertexAlgebra(Bicharacter r, TruncationSpec spec)
        : r_(std::move(r)), braiding_(r_.braiding()), translation_(r_.translation()), spec_(spec)
    {
        if (!r_.vo_ok()) throw VOViolation("bicharacter is singular at z2=0");
    }

    const Bicharacter& pairing() const { return r_; }
    const Bicharacter& braiding() const { return braiding_; }
    const Bicharacter& translation() const { return translation_; }
    const TruncationSpec& spec() const { return spec_; }
    int trunc() const { return spec_.t_order; }

    // -- singular multiplication -------------------------------------------

    /// n-fold singular multiplication: every argument splits into a product
    /// leg and one pairing leg per partner, the product legs are translated
    /// by their variables and the pairing legs hit the bicharacter at
    /// (v_i, v_j) for i < j. A disengaged variable (nullopt) is pinned to 0.
    VValued xn(const std::vector<VElem>& elems, const std::vector<std::optional<Var>>& vars) const
    {
        const int n = static_cast<int>(elems.size());
        const int T = spec_.t_order, W = spec_.weight_cap;
        // legs of argument i: 0 = product leg, partner j < i at j+1, j > i at j
        auto leg_of = [n](int i, int j) { return j < i ? j + 1 : j; };

        VValued total;
        // iterate over the product of per-argument splits
        std::vector<std::vector<std::pair<std::vector<VMono>, Rat>>> splits;
        std::vector<std::vector<std::pair<VMono, ScalarSeries>>> terms(n);
        for (int i = 0; i < n; ++i)
            terms[i].assign(elems[i].terms().begin(), elems[i].terms().end());

        std::vector<int> tidx(n, 0);
        auto run_tuple = [&](const std::vector<std::pair<VMono, ScalarSeries>*>& tuple) {
            splits.clear();
            for (int i = 0; i < n; ++i) splits.push_back(coproduct_splits(tuple[i]->first, n));
            std::vector<int> sidx(n, 0);
            for (;;) {
                // assemble one term
                Rat mult(1);
                for (int i = 0; i < n; ++i) mult *= splits[i][sidx[i]].second;
                RatSeries scalar = rs_const(mult, T);
                for (int i = 0; i < n && !scalar.is_zero(); ++i)
                    for (int j = i + 1; j < n && !scalar.is_zero(); ++j) {
                        const VMono& ui = splits[i][sidx[i]].first[leg_of(i, j)];
                        const VMono& uj = splits[j][sidx[j]].first[leg_of(j, i)];
                        scalar = scalar * pair_value(ui, uj, vars[i], vars[j]);
                    }
                for (int i = 0; i < n; ++i) scalar = scalar * coeff_series(tuple[i]->second, T);
                if (!scalar.is_zero()) {
                    VValued prod(VMono::one(), scalar);
                    for (int i = 0; i < n; ++i) {
                        VElem leg(splits[i][sidx[i]].first[0], ScalarSeries(Rat(1), T));
                        prod = prod * exp_zd_g(leg, vars[i], W, T);
                        prod = gweight_filter(prod, W);
                    }
                    total += weight_filter(prod, W);
                }
                // advance split indices
                int p = n - 1;
                while (p >= 0 && ++sidx[p] == static_cast<int>(splits[p].size())) sidx[p--] = 0;
                if (p < 0) break;
            }
        };

        for (int i = 0; i < n; ++i)
            if (terms[i].empty()) return VValued();
        std::vector<std::pair<VMono, ScalarSeries>*> tuple(n);
        std::vector<size_t> it(n, 0);
        for (;;) {
            for (int i = 0; i < n; ++i) tuple[i] = &terms[i][it[i]];
            run_tuple(tuple);
            int p = n - 1;
            while (p >= 0 && ++it[p] == terms[p].size()) it[p--] = 0;
            if (p < 0) break;
        }
        return total;
    }

    /// Two-argument singular multiplication at (v1, v2), with the
    /// vertex-operator regularity check in v2. v2 = nullopt evaluates the
    /// second variable at zero, giving the vertex operator Y(a, v1) b.
    VValued x2(const VElem& a, const VElem& b, Var v1 = Var::z1,
               std::optional<Var> v2 = Var::z2) const
    {
        VValued x = xn({a, b}, {v1, v2});
        if (v2)
            for (auto& [m, c] : x.terms())
                for (auto& [o, f] : c.coeffs()) {
                    if (f.num().min_exp(*v2) < 0)
                        throw VOViolation("pole in the second variable");
                    for (auto& [form, k] : f.den())
                        if (form[*v2] != 0 && form[v1] == 0)
                            throw VOViolation("pole in the second variable: " + form.str());
                }
        return x;
    }

    /// Y(a, v) b as a closed V-valued rational object.
    VValued y_closed(const VElem& a, const VElem& b, Var v = Var::z1) const
    {
        return x2(a, b, v, std::nullopt);
    }

    // -- vertex operators and modes ------------------------------------------

    /// Pairing legs of Y(a,z)b on a monomial pair: the product parts and
    /// the scalar value of the pairing at (z, 0). Cached; this table drives
    /// every mode and window computation.
    struct YLeg {
        VMono left, right;
        RatSeries s; // Laurent in z1 per t-order
        Rat mult;
    };
    const std::vector<YLeg>& y_legs(const VMono& a, const VMono& b) const
    {
        auto key = std::make_pair(a, b);
        auto it = ylegs_memo_.find(key);
        if (it != ylegs_memo_.end()) return it->second;
        std::vector<YLeg> legs;
        for (auto& [la, mult_a] : coproduct_splits(a, 2))
            for (auto& [lb, mult_b] : coproduct_splits(b, 2)) {
                RatSeries s = rz0(la[1], lb[1]);
                if (s.is_zero()) continue;
                legs.push_back({la[0], lb[0], std::move(s), mult_a * mult_b});
            }
        return ylegs_memo_.emplace(std::move(key), std::move(legs)).first->second;
    }

    /// D^(j) of a basis monomial, cached.
    const VElem& dp_mono(const VMono& m, int j) const
    {
        auto key = std::make_pair(m, j);
        auto it = dp_memo_.find(key);
        if (it != dp_memo_.end()) return it->second;
        VElem v;
        if (j == 0) {
            v = v_mono(m, spec_.t_order);
        } else {
            v = d_action(dp_mono(m, j - 1));
            v.scale_rat(Rat(1) / Rat(j));
        }
        return dp_memo_.emplace(std::move(key), std::move(v)).first->second;
    }

    /// Window of Y(a,z)b coefficients for z-exponents in [lo, hi], in one
    /// pass over the leg tables. Optional g-weight cap prunes the output
    /// (and bounds the divided powers up front).
    std::map<int, VElem> y_window(const VElem& a, const VElem& b, int lo, int hi,
                                  int gcap = -1) const
    {
        const int T = spec_.t_order;
        std::map<int, VElem> out;
        for (auto& [ma, ca] : a.terms())
            for (auto& [mb, cb] : b.terms()) {
                ScalarSeries cc = ca * cb;
                if (coeff_is_zero(cc)) continue;
                for (auto& leg : y_legs(ma, mb)) {
                    int gbase = leg.left.gweight() + leg.right.gweight();
                    for (auto& [o, f] : leg.s.coeffs())
                        for (auto& [e, coef] : f.num().terms()) {
                            int p = e[0];
                            ScalarSeries w = cc * ScalarSeries::monomial(coef * leg.mult, o, T);
                            if (coeff_is_zero(w)) continue;
                            int jhi = hi - p;
                            if (gcap >= 0) jhi = std::min(jhi, gcap - gbase);
                            for (int j = std::max(0, lo - p); j <= jhi; ++j) {
                                const VElem& dleg = dp_mono(leg.left, j);
                                for (auto& [dm, dc] : dleg.terms()) {
                                    VMono prod = dm.times(leg.right);
                                    if (gcap >= 0 && prod.gweight() > gcap) continue;
                                    out[p + j].add(prod, dc * w);
                                }
                            }
                        }
                }
            }
        for (auto it = out.begin(); it != out.end();)
            it = it->second.is_zero() ? out.erase(it) : std::next(it);
        return out;
    }

    /// Exact coefficient of z^k in Y(a,z)b.
    VElem y_coeff(const VElem& a, const VElem& b, int k, int gcap = -1) const
    {
        auto w = y_window(a, b, k, k, gcap);
        auto it = w.find(k);
        return it == w.end() ? VElem() : it->second;
    }

    /// Lower bound for z-exponents of Y(a,z)b (coefficients vanish below it).
    int y_low(const VElem& a, const VElem& b) const
    {
        int lo = 0;
        for (auto& [ma, ca] : a.terms())
            for (auto& [mb, cb] : b.terms())
                for (auto& leg : y_legs(ma, mb))
                    for (auto& [o, f] : leg.s.coeffs())
                        if (!f.is_zero()) lo = std::min(lo, f.num().min_exp(Var::z1));
        return lo;
    }

    /// (n)-product of states: a_(n) b = Res_z z^n Y(a,z)b.
    VElem state_nproduct(const VElem& a, int n, const VElem& b) const
    {
        return y_coeff(a, b, -n - 1);
    }

    /// Mode action a_(m) v (alias of the state product).
    VElem mode_apply(const VElem& a, int m, const VElem& v) const { return state_nproduct(a, m, v); }

    // -- S-commutator, two routes ------------------------------------------

    /// Route one: delta of the closed three-fold multiplication.
    VDist s_comm_direct(const VElem& a, const VElem& b, const VElem& c) const
    {
        VValued x3 = xn({a, b, c}, {Var::z1, Var::z2, std::nullopt});
        return delta_extract_v(x3);
    }

    /// Route two: closed formula from the delta of the scalar pairing,
    ///   sum_k d_k(a' x b') sum_{p+q=k} Y((D^(p) a'') b'', z2) d^(q) delta.
    VDist s_comm_closed(const VElem& a, const VElem& b, const VElem& c) const
    {
        const int T = spec_.t_order, W = spec_.weight_cap;
        VDist out;
        for (auto& [ma, ca] : a.terms())
            for (auto& [mb, cb] : b.terms()) {
                ScalarSeries cc = ca * cb;
                if (coeff_is_zero(cc)) continue;
                for (auto& [la, mult_a] : coproduct_splits(ma, 2))
                    for (auto& [lb, mult_b] : coproduct_splits(mb, 2)) {
                        ScalarDist dd = delta_extract(r_.eval(la[0], lb[0]));
                        if (dd.is_zero()) continue;
                        for (auto& [k, dk] : dd.terms)
                            for (int p = 0; p <= k; ++p) {
                                VElem u = dp_action(VElem(la[1], ScalarSeries(Rat(1), T)), p) *
                                          VElem(lb[1], ScalarSeries(Rat(1), T));
                                if (u.is_zero()) continue;
                                VValued y = y_closed(u, c, Var::z2);
                                RatSeries coef = dk;
                                coef.scale(mult_a * mult_b);
                                VValued term;
                                for (auto& [m, s] : y.terms()) {
                                    RatSeries sc = s * coef;
                                    for (auto& [o, rc] : cc.coeffs())
                                        term.add(m, RatSeries::monomial(RatFun(rc), o, T) * sc);
                                }
                                out.add(k - p, weight_filter(term, W));
                            }
                    }
            }
        return out;
    }

    /// Computes the S-commutator of a(z1), b(z2) applied to the state c by
    /// both routes and returns the common value; a disagreement is a bug in
    /// the kernel and raises RouteMismatch.
    VDist s_commutator(const VElem& a, const VElem& b, const VElem& c) const
    {
        VDist d1 = s_comm_direct(a, b, c);
        VDist d2 = s_comm_closed(a, b, c);
        if (!(d1 == d2)) throw RouteMismatch("s-commutator routes disagree");
        return d1;
    }

    // -- field products ------------------------------------------------------

    /// (a(z2)_(n) b(z2)) c = Res_z1 delta( X_{z1,z2,0}(a x b x c) (z1-z2)^n ),
    /// a closed V-valued function of z2, exact up to the weight cap.
    VValued field_nproduct(const VElem& a, const VElem& b, int n, const VElem& c) const
    {
        VValued x3 = xn({a, b, c}, {Var::z1, Var::z2, std::nullopt});
        RatSeries f(RatFun(Poly::from_linform(LinForm::diff(Var::z1, Var::z2))).pow(n), spec_.t_order);
        VValued scaled;
        for (auto& [m, s] : x3.terms()) scaled.add(m, s * f);
        VDist d = delta_extract_v(scaled);
        return d.at(0);
    }

    /// Normal ordered product of the fields of a and b, applied to c.
    VValued normal_ordered(const VElem& a, const VElem& b, const VElem& c) const
    {
        return field_nproduct(a, b, -1, c);
    }

    /// Reconstruction of the two-variable multiplication from the fields:
    /// X_{z1,z2}(a x b) = e^{z2 D} Y_{z1-z2} S^{(z2)}_{z1-z2, 0}(a x b).
    VValued x_from_y(const VElem& a, const VElem& b) const
    {
        const int T = spec_.t_order, W = spec_.weight_cap;
        Subst move;
        move[static_cast<int>(Var::z1)] = LinForm::diff(Var::z1, Var::z2);
        move[static_cast<int>(Var::z2)] = LinForm();
        move[static_cast<int>(Var::gamma)] = LinForm::var(Var::z2);

        VTensor2 in;
        for (auto& [ma, ca] : a.terms())
            for (auto& [mb, cb] : b.terms()) in.add({ma, mb}, coeff_series(ca * cb, T));
        VTensor2 tr = apply_smap2(translation_, move, in);

        VValued out;
        Subst w_to_diff = subst_one(Var::w, LinForm::diff(Var::z1, Var::z2));
        for (auto& [key, coef] : tr.terms()) {
            VValued y = y_closed(VElem(key[0], ScalarSeries(Rat(1), T)),
                                 VElem(key[1], ScalarSeries(Rat(1), T)), Var::w);
            for (auto& [m, c] : y.terms()) {
                RatSeries cc = substitute(c, w_to_diff) * coef;
                VValued shifted = exp_zd_g(VElem(m, ScalarSeries(Rat(1), T)), Var::z2, W, T);
                for (auto& [sm, sc] : shifted.terms()) out.add(sm, sc * cc);
            }
        }
        return weight_filter(out, W);
    }

    // -- helpers -------------------------------------------------------------

    VDist delta_extract_v(const VValued& x) const
    {
        VDist out;
        for (auto& [m, s] : x.terms()) {
            ScalarDist d = delta_extract(s);
            for (auto& [n, c] : d.terms) {
                VValued v(m, c);
                out.add(n, v);
            }
        }
        return out;
    }

    static VValued substitute_v(const VValued& x, const Subst& s)
    {
        VValued out;
        for (auto& [m, c] : x.terms()) out.add(m, substitute(c, s));
        return out;
    }

    static RatSeries coeff_series(const ScalarSeries& c, int T)
    {
        RatSeries s(T);
        for (auto& [o, v] : c.coeffs()) s.set(o, RatFun(v));
        return s;
    }

    /// r evaluated with variables moved to the given linear forms (or zero).
    RatSeries pair_value(const VMono& a, const VMono& b, std::optional<Var> v1,
                         std::optional<Var> v2) const
    {
        Subst s;
        s[static_cast<int>(Var::z1)] = v1 ? LinForm::var(*v1) : LinForm();
        s[static_cast<int>(Var::z2)] = v2 ? LinForm::var(*v2) : LinForm();
        if (v1 && *v1 == Var::z1 && v2 && *v2 == Var::z2) return r_.eval(a, b);
        return r_.eval_at(a, b, s);
    }

private:
    Bicharacter r_, braiding_, translation_;
    TruncationSpec spec_;
    mutable std::map<std::pair<VMono, VMono>, RatSeries> rz0_memo_;
    mutable std::map<std::pair<VMono, VMono>, std::vector<YLeg>> ylegs_memo_;
    mutable std::map<std::pair<VMono, int>, VElem> dp_memo_;

    /// r_{z,0} on a basis pair, with z on the z1 slot. Cached.
    const RatSeries& rz0(const VMono& a, const VMono& b) const
    {
        auto key = std::make_pair(a, b);
        auto it = rz0_memo_.find(key);
        if (it != rz0_memo_.end()) return it->second;
        RatSeries v = r_.eval_z0(a, b);
        for (auto& [o, f] : v.coeffs())
            if (!f.den().empty()) throw VOViolation("pairing at z2=0 is not Laurent");
        return rz0_memo_.emplace(std::move(key), std::move(v)).first->second;
    }
};

} // namespace qva
