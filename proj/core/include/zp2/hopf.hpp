#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "zp2/dvr.hpp"
#include "zp2/poly.hpp"

namespace zp2 {

// num / den with den a product of designated units
struct Frac {
    Poly num;
    Poly den;

    Frac() = default;
    explicit Frac(Poly n);
    Frac(Poly n, Poly d) : num(std::move(n)), den(std::move(d)) {}
    bool is_polynomial() const;
};

Frac frac_substitute(const Poly& f, const std::vector<Frac>& images);
Frac frac_substitute(const Frac& f, const std::vector<Frac>& images);
// cross-multiplied exact identity
bool frac_equal(const Frac& a, const Frac& b);

// Generators are variables 0..k-1; tensor copy c uses variables c*k..c*k+k-1.
// relations[i] is monic in generator i with coefficients in generators < i.
struct HopfPresentation {
    RingDescriptor ring;
    std::string name;
    std::vector<std::string> generators;
    std::vector<Poly> relations;
    // false for the smooth groups, which have no relations
    bool finite = true;
    std::vector<Frac> comult;
    std::vector<RingElement> counit;
    std::vector<Frac> antipode;
    struct Unit {
        Poly value;
        Poly inverse;
    };
    std::vector<Unit> units;

    int num_generators() const { return static_cast<int>(generators.size()); }
    // product of the relation degrees
    long rank() const;
    std::vector<int> degrees() const;
    // monomial basis of the quotient, lexicographic in (g_{k-1}, ..., g_0)
    std::vector<Mono> basis() const;
};

// triangular relation system of `copies` tensor copies
std::vector<MonicRelation> tensor_relations(const HopfPresentation& H, int copies);
Reducer tensor_reducer(const HopfPresentation& H, int copies);
Poly normal_form(const Poly& f, const HopfPresentation& H, int copies = 1);

struct HopfReport {
    bool well_defined = false;
    bool coassoc = false;
    bool counit_law = false;
    bool antipode_law = false;
    bool commutativity = false;
    bool units = false;
    long rank = 0;
    std::vector<std::string> failures;

    bool ok() const { return well_defined && coassoc && counit_law && antipode_law && commutativity && units; }
};

HopfReport check_hopf_axioms(const HopfPresentation& H);

// algebra map R[target] -> R[source], i.e. a group map source -> target
struct HopfMorphism {
    std::shared_ptr<const HopfPresentation> source;
    std::shared_ptr<const HopfPresentation> target;
    std::vector<Frac> images;
};

struct MorphismReport {
    bool relations = false;
    bool comult = false;
    bool counit = false;
    std::vector<std::string> failures;
    bool ok() const { return relations && comult && counit; }
};

MorphismReport check_morphism_report(const HopfMorphism& f);

// checks many morphisms between one pair of presentations, caching the
// source comultiplication on basis monomials
class MorphismChecker {
public:
    MorphismChecker(std::shared_ptr<const HopfPresentation> source, std::shared_ptr<const HopfPresentation> target);
    MorphismReport check(const std::vector<Frac>& images) const;

private:
    const Poly& comult_of(Mono m) const;

    std::shared_ptr<const HopfPresentation> source_;
    std::shared_ptr<const HopfPresentation> target_;
    bool fast_ = false;
    std::vector<MonicRelation> rels1_, rels2_;
    mutable std::vector<std::vector<Poly>> comult_pows_;
    mutable std::map<Mono, Poly> comult_cache_;
};
bool check_morphism(const HopfMorphism& f);

// v(det) of the induced map on monomial bases; nullopt when it is not
// determinate at the working precision
std::optional<int> determinant_valuation(const HopfMorphism& f);
// morphism that becomes an isomorphism after inverting pi
bool is_model_map(const HopfMorphism& f);
// model map whose determinant is a unit
bool is_isomorphism(const HopfMorphism& f);

// all structure constants reduced mod pi
HopfPresentation residue_fiber(const HopfPresentation& H);

// coefficient matrix of the induced map on monomial bases, rows indexed by source basis
std::vector<std::vector<RingElement>> basis_matrix(const HopfMorphism& f);
std::optional<int> determinant_valuation(std::vector<std::vector<RingElement>> m);

}  // namespace zp2
