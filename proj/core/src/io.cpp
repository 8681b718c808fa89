#include "zp2/io.hpp"

namespace zp2::io {

namespace {

const json& field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw ValidationError(std::string("missing JSON field '") + key + "'");
    return j.at(key);
}

int int_field(const json& j, const char* key) {
    const json& v = field(j, key);
    if (!v.is_number_integer()) throw ValidationError(std::string("JSON field '") + key + "' must be an integer");
    return v.get<int>();
}

json frac_json(const Frac& f, int vars) { return {{"num", to_json(f.num, vars)}, {"den", to_json(f.den, vars)}}; }

}  // namespace

json to_json(const RingElement& x) {
    const RingData* d = x.ring_data();
    json digits = json::array();
    for (auto c : x.digits()) digits.push_back(std::to_string(c));
    return {{"p", d->p}, {"M", d->M}, {"digits", digits}, {"prec", x.precision()}};
}

RingElement ring_element_from_json(const json& j) {
    RingDescriptor R = make_ring(int_field(j, "p"), int_field(j, "M"));
    const json& ds = field(j, "digits");
    if (!ds.is_array() || static_cast<int>(ds.size()) != R.e())
        throw ValidationError("'digits' must be an array of length e = " + std::to_string(R.e()));
    Digits d;
    for (const auto& s : ds) {
        if (!s.is_string()) throw ValidationError("digits are decimal strings");
        std::int64_t v = 0;
        try {
            std::size_t used = 0;
            v = std::stoll(s.get<std::string>(), &used);
            if (used != s.get<std::string>().size()) throw std::invalid_argument("trailing characters");
        } catch (const std::exception&) {
            throw ValidationError("digit '" + s.get<std::string>() + "' is not an integer");
        }
        if (v < 0 || v >= R.data()->pM) throw ValidationError("digit out of range [0, p^M)");
        d.push_back(v);
    }
    int prec = int_field(j, "prec");
    if (prec < 0 || prec > R.max_precision()) throw ValidationError("'prec' out of range");
    return RingElement(R.data(), d, prec);
}

json to_json(const WittVector& w) {
    json out = json::array();
    for (const auto& c : w.coords()) out.push_back(to_json(c));
    return out;
}

json to_json(const Poly& f, int num_vars) {
    json out = json::array();
    for (const auto& [m, c] : f.terms()) {
        json exp = json::array();
        for (int i = 0; i < num_vars; ++i) exp.push_back(mono_exp(m, i));
        out.push_back({{"exp", exp}, {"coeff", to_json(c)}});
    }
    return out;
}

json to_json(const ModelDescriptor& d) {
    return {{"p", d.ring.p()}, {"M", d.ring.M()}, {"m", d.m}, {"n", d.n}, {"a_digits", d.a.digits()}, {"j", d.j}};
}

ModelDescriptor descriptor_from_json(const json& j) {
    RingDescriptor R = make_ring(int_field(j, "p"), int_field(j, "M"));
    ModelDescriptor d;
    d.ring = R;
    d.m = int_field(j, "m");
    d.n = int_field(j, "n");
    d.j = int_field(j, "j");
    const json& a = field(j, "a_digits");
    if (!a.is_array()) throw ValidationError("'a_digits' must be an array");
    std::vector<int> digits;
    for (const auto& x : a) {
        if (!x.is_number_integer()) throw ValidationError("'a_digits' entries must be integers");
        digits.push_back(x.get<int>());
    }
    d.a = QuotElement(R, digits);
    validate_descriptor(d);
    return d;
}

json to_json(const FiberClass& c) {
    json out = {{"tag", to_string(c.tag)}};
    switch (c.tag) {
    case FiberTag::MuPExtension:
        out["i"] = c.i;
        break;
    case FiberTag::AlphaPExtension:
        out["beta"] = c.beta;
        out["gamma"] = c.gamma;
        break;
    case FiberTag::ZpByZp:
        out["a"] = c.a;
        out["b"] = c.b;
        break;
    case FiberTag::TrivialExtension:
        break;
    }
    return out;
}

FiberClass fiber_class_from_json(const json& j) {
    const json& t = field(j, "tag");
    if (!t.is_string()) throw ValidationError("'tag' must be a string");
    const std::string tag = t.get<std::string>();
    FiberClass c;
    if (tag == "MuPExtension") {
        c.tag = FiberTag::MuPExtension;
        c.i = int_field(j, "i");
    } else if (tag == "TrivialExtension") {
        c.tag = FiberTag::TrivialExtension;
    } else if (tag == "AlphaPExtension") {
        c.tag = FiberTag::AlphaPExtension;
        c.beta = int_field(j, "beta");
        c.gamma = int_field(j, "gamma");
    } else if (tag == "ZpByZp") {
        c.tag = FiberTag::ZpByZp;
        c.a = int_field(j, "a");
        c.b = int_field(j, "b");
    } else {
        throw ValidationError("unknown fiber tag '" + tag + "'");
    }
    return c;
}

json to_json(const PhiElement& x) { return {{"a_digits", x.a.digits()}, {"j", x.j}}; }

json to_json(const HomClass& h) {
    json w = json::array();
    for (auto [r, s] : h.witnesses) w.push_back({r, s});
    return {{"tag", to_string(h.tag)}, {"order", h.witnesses.size()}, {"witnesses", w}, {"invertible", h.invertible}};
}

json to_json(const HopfReport& r) {
    return {{"well_defined", r.well_defined}, {"coassociativity", r.coassoc}, {"counit", r.counit_law},
            {"antipode", r.antipode_law},     {"commutativity", r.commutativity}, {"units", r.units},
            {"rank", r.rank},                 {"failures", r.failures},       {"ok", r.ok()}};
}

json to_json(const HopfPresentation& H) {
    const int k = H.num_generators();
    json rel = json::array(), com = json::array(), cou = json::array(), ant = json::array(), uni = json::array();
    for (const auto& r : H.relations) rel.push_back(to_json(r, k));
    for (const auto& c : H.comult) com.push_back(frac_json(c, 2 * k));
    for (const auto& c : H.counit) cou.push_back(to_json(c));
    for (const auto& a : H.antipode) ant.push_back(frac_json(a, k));
    for (const auto& u : H.units) uni.push_back({{"value", to_json(u.value, k)}, {"inverse", to_json(u.inverse, k)}});
    return {{"base", {{"p", H.ring.p()}, {"M", H.ring.M()}}},
            {"name", H.name},
            {"generators", H.generators},
            {"finite", H.finite},
            {"relations", rel},
            {"comult", com},
            {"counit", cou},
            {"antipode", ant},
            {"units", uni}};
}

}  // namespace zp2::io
