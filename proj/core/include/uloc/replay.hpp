#pragma once

#include <functional>
#include <string>

#include "uloc/serialise.hpp"

namespace uloc {

struct ReplayResult {
  bool ok = true;
  std::size_t checked = 0;
  std::string failure;
};

// Re-verifies serialised witnesses without any search: every check is a
// fixed sequence of compositions, kernels and comparisons. A witness passes
// only if it also re-serialises to the identical JSON text.
template <class Cat>
class Replayer {
 public:
  using Module = typename Cat::Module;
  using Morphism = typename Cat::Morphism;
  using RankResolver = std::function<RankFunction<Cat>(const std::string&)>;

  Replayer(const SigmaEngine<Cat>& engine, RankResolver ranks)
      : e_(&engine), codec_(engine), ranks_(std::move(ranks)) {}

  bool replay(const json& w, std::string* why = nullptr) const {
    try {
      std::string reason;
      const bool ok = check(w, reason);
      if (!ok && why) *why = reason;
      return ok;
    } catch (const std::exception& ex) {
      if (why) *why = ex.what();
      return false;
    }
  }

  // Replays every object with a "type" field found anywhere in j.
  ReplayResult replay_all(const json& j) const {
    ReplayResult out;
    walk(j, out);
    return out;
  }

 private:
  void walk(const json& j, ReplayResult& out) const {
    if (j.is_object() && j.contains("type") && j.at("type").is_string() && known(j.at("type"))) {
      std::string why;
      ++out.checked;
      if (!replay(j, &why) && out.ok) {
        out.ok = false;
        out.failure = j.at("type").get<std::string>() + ": " + why;
      }
      return;
    }
    if (j.is_object() || j.is_array())
      for (const auto& x : j) walk(x, out);
  }

  static bool known(const std::string& t) {
    for (const char* k : {"term", "good_pushout", "good_surjection", "certificate", "chain", "fraction",
                          "full_map", "equality", "zero", "cokernel", "submodule", "iso", "pushout",
                          "closure_item"})
      if (t == k) return true;
    return false;
  }

  bool same_text(const json& a, const json& b, std::string& why) const {
    if (a.dump() == b.dump()) return true;
    why = "witness does not re-serialise identically";
    return false;
  }

  template <class Set>
  bool check_fraction_set(const json& w, const std::string& type, std::string& why) const {
    const Cat& C = e_->cat();
    using Frac = Fraction<Cat, typename Set::Cert>;
    auto read = [&](const json& j) -> Frac {
      if constexpr (std::is_same_v<Set, SigmaOre<Cat>>) return codec_.read_fraction(j);
      else return codec_.read_full_fraction(j);
    };
    auto read_cert = [&](const json& j) {
      if constexpr (std::is_same_v<Set, SigmaOre<Cat>>) return codec_.read_certificate(j);
      else return codec_.read_full(j);
    };
    std::optional<SigmaOre<Cat>> sigma_set;
    std::optional<FullMapOre<Cat>> full_set;
    const Set* set;
    if constexpr (std::is_same_v<Set, SigmaOre<Cat>>) {
      sigma_set.emplace(*e_);
      set = &*sigma_set;
    } else {
      full_set.emplace(C, ranks_(w.at("rho").get<std::string>()), std::vector<Module>{});
      set = &*full_set;
    }
    OreCalculus<Cat, Set> ore(*set);
    if (type == "fraction") {
      auto x = read(w);
      if (!ore.verify(x)) return fail(why, "fraction does not verify");
      json again = codec_.write(x);
      if (w.contains("rho")) again["rho"] = w.at("rho");
      if (w.contains("set")) again["set"] = w.at("set");
      return same_text(w, again, why);
    }
    if (type == "equality") {
      auto x = read(w.at("x"));
      auto y = read(w.at("y"));
      auto u = read_cert(w.at("u"));
      auto v = read_cert(w.at("v"));
      if (!ore.verify(x) || !ore.verify(y)) return fail(why, "fractions do not verify");
      if (!ore.verify_equality(x, y, u, v)) return fail(why, "equality witness does not verify");
      return same_text(w.at("x"), codec_.write(x), why) && same_text(w.at("y"), codec_.write(y), why) &&
             same_text(w.at("u"), codec_.write(u), why) && same_text(w.at("v"), codec_.write(v), why);
    }
    // zero
    auto x = read(w.at("x"));
    auto k = read_cert(w.at("killer"));
    if (!ore.verify(x) || !set->verify(k)) return fail(why, "fraction or killer does not verify");
    if (!C.is_zero(C.compose(x.numerator, Set::map_of(k)))) return fail(why, "killer does not kill");
    return same_text(w.at("x"), codec_.write(x), why) && same_text(w.at("killer"), codec_.write(k), why);
  }

  bool check(const json& w, std::string& why) const {
    const Cat& C = e_->cat();
    const std::string type = w.at("type").get<std::string>();
    if (type == "term") {
      auto t = codec_.read_term(w.at("term"));
      if (!e_->verify_term(*t)) return fail(why, "term does not verify");
      return same_text(w.at("term"), codec_.write(t), why);
    }
    if (type == "good_pushout") {
      auto g = codec_.read_pushout(w);
      return e_->verify(g) ? same_text(w, codec_.write(g), why) : fail(why, "good pushout does not verify");
    }
    if (type == "good_surjection") {
      auto g = codec_.read_surjection(w);
      return e_->verify(g) ? same_text(w, codec_.write(g), why) : fail(why, "good surjection does not verify");
    }
    if (type == "certificate") {
      auto c = codec_.read_certificate(w);
      return e_->verify(c) ? same_text(w, codec_.write(c), why) : fail(why, "certificate does not verify");
    }
    if (type == "chain") {
      auto c = codec_.read_chain(w);
      Induction<Cat> ind(*e_);
      return ind.verify(c) ? same_text(w, codec_.write(c), why) : fail(why, "chain does not verify");
    }
    if (type == "full_map") {
      auto c = codec_.read_full(w);
      auto r = rank_of_map(C, c.map, ranks_(w.at("rho").get<std::string>()));
      if (!r.full || r.rank != c.rank || r.source_rank != c.source_rank || r.target_rank != c.target_rank)
        return fail(why, "map is not full with the stored ranks");
      json again = codec_.write(c);
      again["rho"] = w.at("rho");
      return same_text(w, again, why);
    }
    if (type == "fraction" || type == "equality" || type == "zero") {
      if (w.value("set", std::string("sigma")) == "full")
        return check_fraction_set<FullMapOre<Cat>>(w, type, why);
      return check_fraction_set<SigmaOre<Cat>>(w, type, why);
    }
    if (type == "cokernel") {
      auto f = codec_.read_morphism(w.at("of"));
      auto q = codec_.read_morphism(w.at("map"));
      if (!C.same_module(f.target(), q.source()) || !is_cokernel(f, q)) return fail(why, "not the cokernel of the map");
      return true;
    }
    if (type == "submodule") {
      auto inc = codec_.read_morphism(w.at("inclusion"));
      auto q = codec_.read_surjection(w.at("quotient"));
      if (!e_->verify(q)) return fail(why, "quotient does not verify");
      if (!C.is_injective(inc) || !C.is_zero(C.compose(inc, q.map)) || !C.lift(C.kernel(q.map).map, inc))
        return fail(why, "inclusion is not the kernel of the quotient");
      return true;
    }
    if (type == "iso") {
      auto f = codec_.read_morphism(w.at("map"));
      if (!C.is_injective(f) || !C.is_surjective(f)) return fail(why, "map is not an isomorphism");
      return true;
    }
    if (type == "pushout") {
      auto a = codec_.read_morphism(w.at("a"));
      auto b = codec_.read_morphism(w.at("b"));
      auto ap = codec_.read_morphism(w.at("a_prime"));
      auto bp = codec_.read_morphism(w.at("b_prime"));
      if (!C.is_zero(C.add(C.compose(a, bp), C.compose(b, ap)))) return fail(why, "square does not commute");
      auto sum = C.direct_sum({bp.source(), ap.source()});
      auto joint = column(C, sum, std::vector<Morphism>{bp, ap}, bp.target());
      auto in = row(C, a.source(), sum, std::vector<Morphism>{a, b});
      if (!is_cokernel(in, joint)) return fail(why, "square is not a pushout");
      return true;
    }
    if (type == "closure_item") {
      auto t = codec_.read_term(w.at("tau"));
      auto p = codec_.read_morphism(w.at("projection"));
      if (!e_->verify_term(*t) || !is_cokernel(t->value, p))
        return fail(why, "projection is not the cokernel of the term");
      return true;
    }
    return fail(why, "unknown witness type " + type);
  }

  // q is a cokernel of f: it kills f and the comparison map from the computed
  // cokernel is an isomorphism.
  bool is_cokernel(const Morphism& f, const Morphism& q) const {
    const Cat& C = e_->cat();
    if (!C.is_zero(C.compose(f, q))) return false;
    auto h = C.extend(C.cokernel(f).map, q);
    return h && C.is_injective(*h) && C.is_surjective(*h);
  }

  static bool fail(std::string& why, std::string msg) {
    why = std::move(msg);
    return false;
  }

  const SigmaEngine<Cat>* e_;
  WitnessCodec<Cat> codec_;
  RankResolver ranks_;
};

}  // namespace uloc
