#include "zp2/hopf.hpp"

#include <algorithm>
#include <map>

namespace zp2 {

Frac::Frac(Poly n) : num(std::move(n)), den(Poly::constant(num.ring().one())) {}

bool Frac::is_polynomial() const {
    return den.size() == 1 && den.terms().begin()->first == 0 &&
           (den.terms().begin()->second - den.ring().one()).is_zero();
}

namespace {

Frac frac_shift(const Frac& f, int offset) { return Frac(f.num.shift(offset), f.den.shift(offset)); }

Frac frac_var(RingDescriptor R, int var) { return Frac(Poly::variable(R, var)); }

Frac frac_const(const RingElement& c) { return Frac(Poly::constant(c)); }

}  // namespace

Frac frac_substitute(const Poly& f, const std::vector<Frac>& images) {
    const RingDescriptor R = f.ring();
    const int nv = std::max(f.max_var() + 1, 0);
    if (nv > static_cast<int>(images.size())) throw ValidationError("missing image for variable");
    std::vector<int> deg(nv);
    std::vector<std::vector<Poly>> npow(nv), dpow(nv);
    std::vector<bool> plain(nv);
    for (int i = 0; i < nv; ++i) {
        deg[i] = f.degree(i);
        plain[i] = images[i].is_polynomial();
        npow[i].push_back(Poly::constant(R.one()));
        dpow[i].push_back(Poly::constant(R.one()));
        for (int e = 1; e <= deg[i]; ++e) {
            npow[i].push_back(npow[i].back() * images[i].num);
            if (!plain[i]) dpow[i].push_back(dpow[i].back() * images[i].den);
        }
    }
    Poly num(R);
    for (const auto& [m, c] : f.terms()) {
        Poly t = Poly::constant(c);
        for (int i = 0; i < nv; ++i) {
            int ex = mono_exp(m, i);
            if (ex) t *= npow[i][ex];
            if (!plain[i] && deg[i] > ex) t *= dpow[i][deg[i] - ex];
        }
        num += t;
    }
    Poly den = Poly::constant(R.one());
    for (int i = 0; i < nv; ++i)
        if (!plain[i] && deg[i]) den *= dpow[i][deg[i]];
    return Frac(num, den);
}

Frac frac_substitute(const Frac& f, const std::vector<Frac>& images) {
    Frac n = frac_substitute(f.num, images);
    if (f.is_polynomial()) return n;
    Frac d = frac_substitute(f.den, images);
    return Frac(n.num * d.den, n.den * d.num);
}

bool frac_equal(const Frac& a, const Frac& b) { return (a.num * b.den - b.num * a.den).is_zero(); }

std::vector<int> HopfPresentation::degrees() const {
    std::vector<int> d;
    for (int i = 0; i < static_cast<int>(relations.size()); ++i) d.push_back(relations[i].degree(i));
    return d;
}

long HopfPresentation::rank() const {
    if (!finite) return 0;
    long r = 1;
    for (int d : degrees()) r *= d;
    return r;
}

std::vector<Mono> HopfPresentation::basis() const {
    std::vector<Mono> out = {0};
    auto d = degrees();
    for (int i = 0; i < static_cast<int>(d.size()); ++i) {
        std::vector<Mono> next;
        for (int e = 0; e < d[i]; ++e)
            for (Mono m : out) next.push_back(m | mono_var(i, e));
        out = std::move(next);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<MonicRelation> tensor_relations(const HopfPresentation& H, int copies) {
    std::vector<MonicRelation> rels;
    if (!H.finite) return rels;
    const int k = H.num_generators();
    if (copies * k > kMaxVars) throw PrecisionError("too many tensor variables");
    for (int i = k - 1; i >= 0; --i)
        for (int c = 0; c < copies; ++c) rels.push_back(MonicRelation::from_poly(H.relations[i].shift(c * k), c * k + i));
    return rels;
}

Reducer tensor_reducer(const HopfPresentation& H, int copies) {
    auto rels = tensor_relations(H, copies);
    return [rels](const Poly& f) { return reduce(f, rels); };
}

Poly normal_form(const Poly& f, const HopfPresentation& H, int copies) {
    return reduce(f, tensor_relations(H, copies));
}

namespace {

// evaluates f at images, in the copies-fold tensor quotient when H is finite
struct Evaluator {
    const HopfPresentation& H;
    std::map<int, Reducer> reducers;

    explicit Evaluator(const HopfPresentation& h) : H(h) {}

    const Reducer& reducer(int copies) {
        auto it = reducers.find(copies);
        if (it == reducers.end()) it = reducers.emplace(copies, tensor_reducer(H, copies)).first;
        return it->second;
    }

    Frac eval(const Frac& f, const std::vector<Frac>& images, int copies) {
        if (!H.finite) return frac_substitute(f, images);
        std::vector<Poly> nums;
        for (const auto& x : images) {
            if (!x.is_polynomial()) throw ValidationError("finite presentations need polynomial maps");
            nums.push_back(x.num);
        }
        if (!f.is_polynomial()) throw ValidationError("finite presentations need polynomial maps");
        return Frac(substitute(f.num, nums, reducer(copies)));
    }

    bool equal(const Frac& a, const Frac& b, int copies) {
        if (!H.finite) return frac_equal(a, b);
        return reducer(copies)(a.num - b.num).is_zero();
    }

    bool is_zero(const Frac& a, int copies) {
        if (!H.finite) return a.num.is_zero();
        return reducer(copies)(a.num).is_zero();
    }
};

}  // namespace

HopfReport check_hopf_axioms(const HopfPresentation& H) {
    HopfReport rep;
    const RingDescriptor R = H.ring;
    const int k = H.num_generators();
    Evaluator ev(H);
    auto fail = [&](const std::string& what, int i) {
        rep.failures.push_back(what + " fails on " + H.generators[i]);
    };
    rep.rank = H.rank();

    std::vector<Frac> ident1, ident_right2, counit_left, counit_right, anti_left, anti_right, swap;
    std::vector<Frac> coassoc_left, coassoc_right;
    for (int j = 0; j < k; ++j) {
        ident1.push_back(frac_var(R, j));
        counit_left.push_back(frac_const(H.counit[j]));
        counit_right.push_back(frac_var(R, j));
        anti_left.push_back(H.antipode[j]);
        anti_right.push_back(frac_var(R, j));
        swap.push_back(frac_var(R, k + j));
        coassoc_left.push_back(H.comult[j]);
        coassoc_right.push_back(frac_var(R, j));
    }
    for (int j = 0; j < k; ++j) {
        counit_left.push_back(frac_var(R, j));
        counit_right.push_back(frac_const(H.counit[j]));
        anti_left.push_back(frac_var(R, j));
        anti_right.push_back(H.antipode[j]);
        swap.push_back(frac_var(R, j));
        coassoc_left.push_back(frac_var(R, 2 * k + j));
        coassoc_right.push_back(frac_shift(H.comult[j], k));
    }

    rep.well_defined = true;
    if (H.finite) {
        for (int i = 0; i < k; ++i) {
            Frac rel(H.relations[i]);
            if (!ev.is_zero(ev.eval(rel, H.comult, 2), 2)) rep.well_defined = false, fail("comultiplication of relation", i);
            if (!ev.is_zero(ev.eval(rel, H.antipode, 1), 1)) rep.well_defined = false, fail("antipode of relation", i);
            std::vector<Frac> eps;
            for (int j = 0; j < k; ++j) eps.push_back(frac_const(H.counit[j]));
            if (!frac_substitute(rel, eps).num.is_zero()) rep.well_defined = false, fail("counit of relation", i);
        }
    }
    rep.coassoc = rep.counit_law = rep.antipode_law = rep.commutativity = true;
    for (int i = 0; i < k; ++i) {
        const Frac& d = H.comult[i];
        if (!ev.equal(ev.eval(d, coassoc_left, 3), ev.eval(d, coassoc_right, 3), 3)) rep.coassoc = false, fail("coassociativity", i);
        if (!ev.equal(ev.eval(d, counit_left, 1), ident1[i], 1) || !ev.equal(ev.eval(d, counit_right, 1), ident1[i], 1))
            rep.counit_law = false, fail("counit law", i);
        Frac e = frac_const(H.counit[i]);
        if (!ev.equal(ev.eval(d, anti_left, 1), e, 1) || !ev.equal(ev.eval(d, anti_right, 1), e, 1))
            rep.antipode_law = false, fail("antipode law", i);
        if (!ev.equal(ev.eval(d, swap, 2), d, 2)) rep.commutativity = false, fail("commutativity", i);
    }
    rep.units = true;
    for (const auto& u : H.units) {
        Poly prod = u.value * u.inverse - Poly::constant(R.one());
        bool ok = H.finite ? normal_form(prod, H).is_zero() : prod.is_zero();
        if (!ok) {
            rep.units = false;
            rep.failures.push_back("unit certificate fails");
        }
    }
    return rep;
}

namespace {

MorphismReport general_morphism_report(const HopfMorphism& f) {
    MorphismReport rep;
    const HopfPresentation& S = *f.source;
    const HopfPresentation& T = *f.target;
    const int ks = S.num_generators(), kt = T.num_generators();
    if (static_cast<int>(f.images.size()) != kt) throw ValidationError("morphism needs one image per target generator");
    Evaluator ev(S);

    rep.relations = true;
    if (T.finite) {
        for (int i = 0; i < kt; ++i)
            if (!ev.is_zero(ev.eval(Frac(T.relations[i]), f.images, 1), 1)) {
                rep.relations = false;
                rep.failures.push_back("relation of " + T.generators[i] + " is not killed");
            }
    }
    std::vector<Frac> tensor_images = f.images;
    for (int j = 0; j < kt; ++j) tensor_images.push_back(frac_shift(f.images[j], ks));
    rep.comult = true;
    for (int i = 0; i < kt; ++i) {
        Frac lhs = ev.eval(f.images[i], S.comult, 2);
        Frac rhs = ev.eval(T.comult[i], tensor_images, 2);
        if (!ev.equal(lhs, rhs, 2)) {
            rep.comult = false;
            rep.failures.push_back("comultiplication square fails on " + T.generators[i]);
        }
    }
    std::vector<Frac> eps;
    for (int j = 0; j < ks; ++j) eps.push_back(frac_const(S.counit[j]));
    rep.counit = true;
    for (int i = 0; i < kt; ++i) {
        Frac v = frac_substitute(f.images[i], eps);
        if (!(v.num - T.counit[i] * v.den).is_zero()) {
            rep.counit = false;
            rep.failures.push_back("counit not preserved on " + T.generators[i]);
        }
    }
    (void)ks;
    return rep;
}

}  // namespace

MorphismChecker::MorphismChecker(std::shared_ptr<const HopfPresentation> source,
                                 std::shared_ptr<const HopfPresentation> target)
    : source_(std::move(source)), target_(std::move(target)) {
    const HopfPresentation& S = *source_;
    const HopfPresentation& T = *target_;
    fast_ = S.finite && T.finite;
    for (const auto& c : S.comult) fast_ = fast_ && c.is_polynomial();
    for (const auto& c : T.comult) fast_ = fast_ && c.is_polynomial();
    if (!fast_) return;
    rels1_ = tensor_relations(S, 1);
    rels2_ = tensor_relations(S, 2);
    comult_pows_.resize(S.num_generators());
}

const Poly& MorphismChecker::comult_of(Mono m) const {
    auto it = comult_cache_.find(m);
    if (it != comult_cache_.end()) return it->second;
    const HopfPresentation& S = *source_;
    Poly out = Poly::constant(S.ring.one());
    for (int i = 0; i < S.num_generators(); ++i) {
        const int ex = mono_exp(m, i);
        auto& pw = comult_pows_[i];
        if (pw.empty()) pw.push_back(Poly::constant(S.ring.one()));
        while (static_cast<int>(pw.size()) <= ex) pw.push_back(reduce(pw.back() * S.comult[i].num, rels2_));
        if (ex) out = reduce(out * pw[ex], rels2_);
    }
    return comult_cache_.emplace(m, std::move(out)).first->second;
}

MorphismReport MorphismChecker::check(const std::vector<Frac>& images) const {
    HopfMorphism f{source_, target_, images};
    bool plain = true;
    for (const auto& x : images) plain = plain && x.is_polynomial();
    if (!fast_ || !plain) return general_morphism_report(f);
    const HopfPresentation& S = *source_;
    const HopfPresentation& T = *target_;
    const int ks = S.num_generators(), kt = T.num_generators();
    if (static_cast<int>(images.size()) != kt) throw ValidationError("morphism needs one image per target generator");
    MorphismReport rep;
    std::vector<Poly> nums;
    for (const auto& x : images) nums.push_back(reduce(x.num, rels1_));
    Reducer red = [this](const Poly& g) { return reduce(g, rels1_); };

    rep.relations = true;
    for (int i = 0; i < kt; ++i)
        if (!substitute(T.relations[i], nums, red).is_zero()) {
            rep.relations = false;
            rep.failures.push_back("relation of " + T.generators[i] + " is not killed");
        }

    std::map<Mono, Poly> img_pow;
    auto image_of = [&](Mono m) -> const Poly& {
        auto it = img_pow.find(m);
        if (it == img_pow.end()) it = img_pow.emplace(m, substitute(Poly::monomial(S.ring.one(), m), nums, red)).first;
        return it->second;
    };
    const Mono low_mask = (static_cast<Mono>(1) << (8 * kt)) - 1;
    rep.comult = true;
    for (int i = 0; i < kt; ++i) {
        Poly lhs(S.ring);
        for (const auto& [m, c] : nums[i].terms()) lhs += c * comult_of(m);
        Poly rhs(S.ring);
        for (const auto& [m, c] : T.comult[i].num.terms()) {
            const Poly& x = image_of(m & low_mask);
            const Poly& y = image_of(m >> (8 * kt));
            for (const auto& [mx, cx] : x.terms()) {
                const RingElement cc = c * cx;
                for (const auto& [my, cy] : y.terms()) rhs.add_term(mx | (my << (8 * ks)), cc * cy);
            }
        }
        if (!reduce(lhs - rhs, rels2_).is_zero()) {
            rep.comult = false;
            rep.failures.push_back("comultiplication square fails on " + T.generators[i]);
        }
    }
    std::vector<Frac> eps;
    for (int j = 0; j < ks; ++j) eps.push_back(frac_const(S.counit[j]));
    rep.counit = true;
    for (int i = 0; i < kt; ++i) {
        Frac v = frac_substitute(images[i], eps);
        if (!(v.num - T.counit[i] * v.den).is_zero()) {
            rep.counit = false;
            rep.failures.push_back("counit not preserved on " + T.generators[i]);
        }
    }
    return rep;
}

MorphismReport check_morphism_report(const HopfMorphism& f) { return MorphismChecker(f.source, f.target).check(f.images); }

bool check_morphism(const HopfMorphism& f) { return check_morphism_report(f).ok(); }

std::vector<std::vector<RingElement>> basis_matrix(const HopfMorphism& f) {
    const HopfPresentation& S = *f.source;
    const HopfPresentation& T = *f.target;
    if (!S.finite || !T.finite) throw ValidationError("basis matrix needs finite presentations");
    auto sb = S.basis(), tb = T.basis();
    std::map<Mono, std::size_t> row;
    for (std::size_t i = 0; i < sb.size(); ++i) row[sb[i]] = i;
    std::vector<Poly> nums;
    for (const auto& x : f.images) {
        if (!x.is_polynomial()) throw ValidationError("finite presentations need polynomial maps");
        nums.push_back(x.num);
    }
    const auto rels = tensor_relations(S, 1);
    const auto deg = T.degrees();
    std::vector<std::vector<Poly>> pw(nums.size());
    for (std::size_t i = 0; i < nums.size(); ++i) {
        pw[i].push_back(Poly::constant(S.ring.one()));
        for (int e = 1; e < deg[i]; ++e) pw[i].push_back(reduce(pw[i].back() * nums[i], rels));
    }
    std::vector<std::vector<RingElement>> m(sb.size(), std::vector<RingElement>(tb.size(), S.ring.zero()));
    for (std::size_t j = 0; j < tb.size(); ++j) {
        Poly img = Poly::constant(S.ring.one());
        for (std::size_t i = 0; i < nums.size(); ++i)
            if (int e = mono_exp(tb[j], static_cast<int>(i))) img = reduce(img * pw[i][e], rels);
        for (const auto& [mono, c] : img.terms()) m.at(row.at(mono))[j] = c;
    }
    return m;
}

std::optional<int> determinant_valuation(std::vector<std::vector<RingElement>> m) {
    const std::size_t n = m.size();
    if (n == 0 || m[0].size() != n) return std::nullopt;
    int total = 0;
    std::vector<bool> row_used(n, false), col_used(n, false);
    for (std::size_t step = 0; step < n; ++step) {
        int best = -1;
        std::size_t br = 0, bc = 0;
        for (std::size_t r = 0; r < n; ++r) {
            if (row_used[r]) continue;
            for (std::size_t c = 0; c < n; ++c) {
                if (col_used[c]) continue;
                Valuation v = m[r][c].valuation();
                if (!v.determinate) continue;
                if (best < 0 || v.value < best) best = v.value, br = r, bc = c;
            }
        }
        if (best < 0) return std::nullopt;
        total += best;
        row_used[br] = col_used[bc] = true;
        const RingElement piv = m[br][bc];
        for (std::size_t r = 0; r < n; ++r) {
            if (row_used[r] || m[r][bc].is_zero()) continue;
            RingElement q = divide_exact(m[r][bc], piv);
            for (std::size_t c = 0; c < n; ++c)
                if (!col_used[c] || c == bc) m[r][c] -= q * m[br][c];
        }
    }
    return total;
}

std::optional<int> determinant_valuation(const HopfMorphism& f) {
    if (f.source->rank() != f.target->rank()) return std::nullopt;
    return determinant_valuation(basis_matrix(f));
}

bool is_model_map(const HopfMorphism& f) { return check_morphism(f) && determinant_valuation(f).has_value(); }

bool is_isomorphism(const HopfMorphism& f) {
    if (!check_morphism(f)) return false;
    auto v = determinant_valuation(f);
    return v && *v == 0;
}

HopfPresentation residue_fiber(const HopfPresentation& H) {
    HopfPresentation out = H;
    out.name = H.name + " mod pi";
    for (auto& r : out.relations) r = r.with_precision(1);
    for (auto& c : out.comult) c = Frac(c.num.with_precision(1), c.den.with_precision(1));
    for (auto& c : out.antipode) c = Frac(c.num.with_precision(1), c.den.with_precision(1));
    for (auto& c : out.counit) c = c.with_precision(1);
    for (auto& u : out.units) u = {u.value.with_precision(1), u.inverse.with_precision(1)};
    return out;
}

}  // namespace zp2
