#pragma once

#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "uloc/error.hpp"
#include "uloc/good_maps.hpp"
#include "uloc/induction.hpp"
#include "uloc/ore.hpp"
#include "uloc/sylvester.hpp"

namespace uloc {

using json = nlohmann::json;

// Witnesses as JSON. Every witness carries a "type" tag; reading one back
// rebuilds it through the same constructors and rejects anything that does
// not reproduce the stored values exactly.
template <class Cat>
class WitnessCodec {
 public:
  using Module = typename Cat::Module;
  using Morphism = typename Cat::Morphism;
  using Ptr = TermPtr<Cat>;
  using Term = TriangularTerm<Cat>;
  using GP = GoodPushoutWitness<Cat>;
  using GS = GoodSurjectionWitness<Cat>;
  using Cert = SigmaCertificate<Cat>;
  using FullCert = FullMapCertificate<Cat>;

  explicit WitnessCodec(const SigmaEngine<Cat>& engine) : e_(&engine) {}

  const Cat& cat() const { return e_->cat(); }

  json write(const Module& m) const { return cat().to_json(m); }
  json write(const Morphism& f) const { return cat().to_json(f); }
  Module read_module(const json& j) const { return cat().module_from_json(j); }
  Morphism read_morphism(const json& j) const { return cat().morphism_from_json(j); }

  json write(const Ptr& t) const {
    json j{{"kind", kind_name(t->kind)}};
    switch (t->kind) {
      case Term::Kind::Trivial:
        break;
      case Term::Kind::Generator:
        j["generator"] = t->generator;
        break;
      default:
        j["first"] = write(t->first);
        j["second"] = write(t->second);
        j["h"] = write(*t->h);
    }
    j["value"] = write(t->value);
    return j;
  }

  Ptr read_term(const json& j) const {
    const std::string kind = j.at("kind").get<std::string>();
    Ptr t;
    if (kind == "trivial") {
      t = e_->trivial_term();
    } else if (kind == "generator") {
      t = e_->generator_term(j.at("generator").get<std::size_t>());
    } else if (kind == "lower" || kind == "upper") {
      auto a = read_term(j.at("first"));
      auto b = read_term(j.at("second"));
      auto h = read_morphism(j.at("h"));
      t = kind == "lower" ? e_->lower(a, b, h) : e_->upper(a, b, h);
    } else {
      throw ParseError("unknown term kind " + kind);
    }
    if (!cat().equal(t->value, read_morphism(j.at("value"))))
      throw VerificationFailure("stored term value does not match its construction");
    return t;
  }

  json write(const GP& w) const {
    return {{"type", "good_pushout"}, {"tau", write(w.tau)}, {"attach", write(w.attach)},
            {"theta", write(w.theta)}, {"map", write(w.map)}};
  }
  json write(const GS& w) const {
    return {{"type", "good_surjection"}, {"tau", write(w.tau)}, {"a", write(w.a)},
            {"theta", write(w.theta)}, {"map", write(w.map)}};
  }
  json write(const Cert& c) const {
    return {{"type", "certificate"}, {"t", write(c.t)}, {"u", write(c.u)}, {"map", write(c.map)}};
  }
  json write(const FullCert& c) const {
    return {{"type", "full_map"}, {"map", write(c.map)}, {"rank", c.rank},
            {"source_rank", c.source_rank}, {"target_rank", c.target_rank}};
  }

  GP read_pushout(const json& j) const {
    expect(j, "good_pushout");
    return {read_term(j.at("tau")), read_morphism(j.at("attach")), read_morphism(j.at("theta")),
            read_morphism(j.at("map"))};
  }
  GS read_surjection(const json& j) const {
    expect(j, "good_surjection");
    return {read_term(j.at("tau")), read_morphism(j.at("a")), read_morphism(j.at("theta")),
            read_morphism(j.at("map"))};
  }
  Cert read_certificate(const json& j) const {
    expect(j, "certificate");
    return {read_pushout(j.at("t")), read_surjection(j.at("u")), read_morphism(j.at("map"))};
  }
  FullCert read_full(const json& j) const {
    expect(j, "full_map");
    FullCert c{read_morphism(j.at("map")), j.at("rank").get<long>(), j.at("source_rank").get<long>(),
               j.at("target_rank").get<long>(), true};
    return c;
  }

  template <class C>
  json write(const Fraction<Cat, C>& x) const {
    return {{"type", "fraction"}, {"numerator", write(x.numerator)}, {"denominator", write(x.denominator)},
            {"cert", write(x.cert)}};
  }
  Fraction<Cat, Cert> read_fraction(const json& j) const {
    expect(j, "fraction");
    return {read_morphism(j.at("numerator")), read_morphism(j.at("denominator")), read_certificate(j.at("cert"))};
  }
  Fraction<Cat, FullCert> read_full_fraction(const json& j) const {
    expect(j, "fraction");
    return {read_morphism(j.at("numerator")), read_morphism(j.at("denominator")), read_full(j.at("cert"))};
  }

  json write(const DirectedChain<Cat>& c) const {
    json steps = json::array();
    for (const auto& s : c.steps) steps.push_back(write(s));
    json j{{"type", "chain"}, {"base", write(c.base)}, {"steps", steps}};
    if (c.stabilised_at) j["stabilised_at"] = *c.stabilised_at;
    return j;
  }
  DirectedChain<Cat> read_chain(const json& j) const {
    expect(j, "chain");
    DirectedChain<Cat> c;
    c.base = read_module(j.at("base"));
    for (const auto& s : j.at("steps")) c.steps.push_back(read_certificate(s));
    if (j.contains("stabilised_at")) c.stabilised_at = j.at("stabilised_at").get<std::size_t>();
    return c;
  }

  static std::string kind_name(typename Term::Kind k) {
    switch (k) {
      case Term::Kind::Trivial: return "trivial";
      case Term::Kind::Generator: return "generator";
      case Term::Kind::Lower: return "lower";
      default: return "upper";
    }
  }

 private:
  static void expect(const json& j, const std::string& type) {
    if (!j.is_object() || j.value("type", std::string()) != type)
      throw ParseError("expected a " + type + " witness");
  }

  const SigmaEngine<Cat>* e_;
};

}  // namespace uloc
