#include "uloc/commands.hpp"

#include <chrono>
#include <iomanip>
#include <sstream>

#include "uloc/replay.hpp"

namespace uloc {

using json = nlohmann::json;

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {
      "check", "coker",  "pushout", "hom",     "closure",     "factor",      "member", "loc",      "induce",
      "ker-ind", "torsion", "trivial", "preloc-check", "stably-flat", "rank", "full-map", "division-probe"};
  return names;
}

namespace {

std::string verdict_word(Verdict v) { return to_string(v); }

std::string render(const std::vector<std::pair<std::string, std::string>>& rows) {
  std::size_t w = 0;
  for (const auto& r : rows) w = std::max(w, r.first.size());
  std::ostringstream os;
  for (const auto& [k, v] : rows) os << std::left << std::setw(static_cast<int>(w)) << k << "  " << v << "\n";
  return os.str();
}

Bounds apply(Bounds b, const BoundFlags& f) {
  if (f.depth) b.depth = *f.depth;
  if (f.ext_bound) b.ext_bound = *f.ext_bound;
  if (f.coeff_window) b.coeff_window = *f.coeff_window;
  if (f.word_length) b.word_length = *f.word_length;
  if (f.seed) b.seed = *f.seed;
  json check = bounds_to_json(b);
  return parse_bounds(check);
}

template <class Cat>
class Runner {
 public:
  using Module = typename Cat::Module;
  using Morphism = typename Cat::Morphism;
  using Cert = SigmaCertificate<Cat>;
  using Frac = Fraction<Cat, Cert>;

  Runner(const Problem<Cat>& P, const Invocation& inv)
      : P_(P),
        inv_(inv),
        C_(*P.cat),
        sigma_(P.sigma_maps(inv.sigma)),
        bounds_(apply(P.bounds, inv.bounds)),
        engine_(C_, sigma_.second, bounds_),
        codec_(engine_),
        set_(engine_),
        ore_(set_),
        ind_(engine_) {}

  Report run() {
    const auto start = std::chrono::steady_clock::now();
    const std::string& c = inv_.command;
    if (c == "check") check();
    else if (c == "coker") coker();
    else if (c == "pushout") do_pushout();
    else if (c == "hom") hom();
    else if (c == "closure") closure();
    else if (c == "factor") factor();
    else if (c == "member") member();
    else if (c == "loc") loc();
    else if (c == "induce") induce();
    else if (c == "ker-ind") kernel(true);
    else if (c == "torsion") kernel(false);
    else if (c == "trivial") trivial();
    else if (c == "preloc-check") preloc();
    else if (c == "stably-flat") flat();
    else if (c == "rank") rank();
    else if (c == "full-map") full_map();
    else if (c == "division-probe") probe();
    else throw ParseError("unknown command \"" + c + "\"");
    const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

    Report r;
    std::string echo = c;
    for (const auto& a : inv_.args) echo += " " + a;
    r.data = {{"command", echo},
              {"ring", P_.ring.to_json()},
              {"sigma", sigma_.first},
              {"bounds", bounds_to_json(bounds_)},
              {"verdict", verdict_word(verdict_)},
              {"result", result_},
              {"witnesses", witnesses_},
              {"timing_ms", ms}};
    if (!oracle_.empty()) r.data["oracle"] = oracle_;
    if (!rho_name_.empty()) r.data["rho"] = rho_name_;
    std::vector<std::pair<std::string, std::string>> head = {{"command", echo}, {"verdict", verdict_word(verdict_)}};
    head.insert(head.end(), rows_.begin(), rows_.end());
    head.push_back({"witnesses", std::to_string(witnesses_.size())});
    r.summary = render(head);
    r.exit_code = verdict_ == Verdict::Unknown ? 2 : 0;
    return r;
  }

 private:
  // ----- argument helpers
  const std::string& arg(std::size_t i, const char* what) const {
    if (i >= inv_.args.size()) throw ParseError(inv_.command + " needs " + what);
    return inv_.args[i];
  }
  const Module& module_arg(std::size_t i) const { return P_.module(arg(i, "a module name")); }
  const Morphism& morphism_arg(std::size_t i) const { return P_.morphism(arg(i, "a morphism name")); }
  std::vector<Module> modules_from(std::size_t i) const {
    if (inv_.args.size() <= i) return P_.module_list();
    std::vector<Module> out;
    for (std::size_t k = i; k < inv_.args.size(); ++k) out.push_back(P_.module(inv_.args[k]));
    return out;
  }
  Frac fraction_arg(std::size_t i) const {
    const auto& name = arg(i, "a fraction or morphism name");
    for (const auto& [n, d] : P_.fractions)
      if (n == name) {
        const auto& s = P_.morphism(d.denominator);
        auto m = engine_.member(s);
        if (!m.certificate) throw VerificationFailure("denominator \"" + d.denominator + "\" is not certified in sigma");
        return ore_.make(P_.morphism(d.numerator), *m.certificate);
      }
    return ore_.of(P_.morphism(name));
  }
  RankFunction<Cat> rho() {
    std::string name = inv_.rho;
    if (name.empty()) {
      if (P_.ranks.empty()) throw ReferenceError("no rank function selected");
      name = P_.ranks.front();
    }
    rho_name_ = name;
    return parse_rank(C_, name);
  }

  void row(std::string k, std::string v) { rows_.push_back({std::move(k), std::move(v)}); }
  void witness(json w) { witnesses_.push_back(std::move(w)); }
  json equality(const Frac& x, const Frac& y, const Cert& u, const Cert& v) const {
    return {{"type", "equality"}, {"set", "sigma"}, {"x", codec_.write(x)}, {"y", codec_.write(y)},
            {"u", codec_.write(u)}, {"v", codec_.write(v)}};
  }
  void note_bounds() {
    result_["bounds_note"] = "searches stop at depth " + std::to_string(bounds_.depth) + ", extension length " +
                             std::to_string(bounds_.ext_bound) + ", coefficient window " +
                             std::to_string(bounds_.coeff_window);
  }

  // ----- commands
  void check() {
    result_["modules"] = P_.modules.size();
    result_["morphisms"] = P_.morphisms.size();
    result_["sigma_generators"] = sigma_.second.size();
    result_["normalised"] = P_.to_json();
    row("modules", std::to_string(P_.modules.size()));
    row("morphisms", std::to_string(P_.morphisms.size()));
    row("sigma", sigma_.first.empty() ? "none" : sigma_.first + " (" + std::to_string(sigma_.second.size()) + ")");
    verdict_ = Verdict::Yes;
  }

  void coker() {
    const auto& f = morphism_arg(0);
    auto ck = C_.cokernel(f);
    result_ = {{"object", C_.to_json(ck.object)}, {"describe", C_.describe(ck.object)}, {"map", C_.to_json(ck.map)}};
    witness({{"type", "cokernel"}, {"of", C_.to_json(f)}, {"map", C_.to_json(ck.map)}});
    row("cokernel", C_.describe(ck.object));
    verdict_ = Verdict::Yes;
  }

  void do_pushout() {
    const auto& a = morphism_arg(0);
    const auto& b = morphism_arg(1);
    if (!C_.same_module(a.source(), b.source())) throw SourceMismatch("pushout needs maps with a common source");
    auto po = pushout(C_, a, b);
    result_ = {{"object", C_.to_json(po.object)}, {"describe", C_.describe(po.object)}};
    witness({{"type", "pushout"},
             {"a", C_.to_json(a)},
             {"b", C_.to_json(b)},
             {"a_prime", C_.to_json(po.a_prime)},
             {"b_prime", C_.to_json(po.b_prime)}});
    row("pushout", C_.describe(po.object));
    verdict_ = Verdict::Yes;
  }

  void hom() {
    auto h = C_.hom(module_arg(0), module_arg(1));
    json gens = json::array();
    for (std::size_t i = 0; i < h.generators.size(); ++i)
      gens.push_back({{"map", C_.to_json(h.generators[i])}, {"order", h.orders[i]}});
    result_ = {{"generators", gens}};
    std::string orders;
    for (const auto& o : h.orders) orders += (orders.empty() ? "" : ", ") + o;
    row("generators", std::to_string(h.generators.size()) + (orders.empty() ? "" : " of orders " + orders));
    verdict_ = Verdict::Yes;
  }

  void closure() {
    const int len = inv_.length.value_or(bounds_.ext_bound);
    auto items = engine_.extension_closure(len);
    json out = json::array();
    for (const auto& it : items) {
      out.push_back({{"object", C_.to_json(it.object)}, {"describe", C_.describe(it.object)}, {"length", it.length}});
      witness({{"type", "closure_item"}, {"tau", codec_.write(it.tau)}, {"projection", C_.to_json(it.projection)}});
    }
    result_ = {{"items", out}, {"length_bound", len}};
    std::string names;
    for (const auto& it : items) names += (names.empty() ? "" : ", ") + C_.describe(it.object);
    row("items", std::to_string(items.size()) + (names.empty() ? "" : ": " + names));
    verdict_ = Verdict::Yes;
  }

  void factor() {
    if (inv_.args.empty()) throw ParseError("factor needs at least one morphism");
    std::vector<WordStep<Cat>> word;
    json kinds = json::array();
    for (std::size_t i = 0; i < inv_.args.size(); ++i) {
      const auto& f = morphism_arg(i);
      auto gp = engine_.is_good_pushout(f);
      if (gp.witness) {
        word.push_back(*gp.witness);
        kinds.push_back("good pushout");
        continue;
      }
      auto gs = engine_.is_good_surjection(f);
      if (gs.witness) {
        word.push_back(*gs.witness);
        kinds.push_back("good surjection");
        continue;
      }
      throw MalformedWord("\"" + inv_.args[i] + "\" is neither a good pushout nor a good surjection within bounds");
    }
    auto c = engine_.factor(word);
    result_ = {{"steps", kinds}, {"map", C_.to_json(c.map)}, {"pushout", C_.to_json(c.t.map)},
               {"surjection", C_.to_json(c.u.map)}};
    witness(codec_.write(c));
    row("steps", std::to_string(word.size()));
    row("middle", C_.describe(c.t.map.target()));
    verdict_ = Verdict::Yes;
  }

  void member() {
    const auto& s = morphism_arg(0);
    auto r = engine_.member(s);
    verdict_ = r.verdict;
    result_ = {{"reason", r.reason}, {"oracle_refutes", r.oracle_refutes}};
    if (r.certificate) witness(codec_.write(*r.certificate));
    if (r.oracle_refutes) oracle_ = {{"ring", engine_.oracle().describe_ring()}, {"refutes", true}};
    row("reason", r.reason);
    note_bounds();
  }

  void loc() {
    const auto& sub = arg(0, "eq, hom or coker");
    if (sub == "eq") {
      auto x = fraction_arg(1), y = fraction_arg(2);
      auto r = ore_.equal(x, y);
      verdict_ = r.verdict;
      result_ = {{"equal", verdict_word(r.verdict)}, {"reason", r.reason}};
      if (r.u && r.v) witness(equality(x, y, *r.u, *r.v));
      row("equal", verdict_word(r.verdict));
      row("reason", r.reason);
    } else if (sub == "hom") {
      const auto& m = P_.module(arg(1, "a source module"));
      const auto& n = P_.module(arg(2, "a target module"));
      auto h = ore_.enumerate(m, n, bounds_.coeff_window, bounds_.cap);
      json classes = json::array();
      for (const auto& x : h.classes) {
        auto w = codec_.write(x);
        classes.push_back(w);
        witness(w);
      }
      result_ = {{"classes", h.classes.size()}, {"denominators", h.denominators}, {"fractions", h.fractions}};
      if (h.dimension) result_["dimension"] = *h.dimension;
      row("classes", std::to_string(h.classes.size()));
      if (h.dimension) row("dimension", std::to_string(*h.dimension));
      // the count is a lower bound for the true hom set
      verdict_ = Verdict::Yes;
      note_bounds();
    } else if (sub == "coker") {
      auto x = fraction_arg(1);
      auto ck = ore_.cokernel(x);
      result_ = {{"object", C_.to_json(ck.object)}, {"describe", C_.describe(ck.object)}};
      witness(codec_.write(ck.map));
      row("cokernel", C_.describe(ck.object));
      verdict_ = Verdict::Yes;
      if (C_.same_module(x.denominator.source(), x.denominator.target()) && C_.equal(x.denominator, C_.identity(x.denominator.source()))) {
        // compare with the cokernel after pushing the target through a sigma move
        auto moves = engine_.pushout_moves(x.numerator.target());
        Cert s = engine_.identity(x.numerator.target());
        for (const auto& g : moves)
          if (!C_.is_zero(g.attach)) {
            s = engine_.certificate(g);
            break;
          }
        auto cmp = ore_.compare_cokernels(x.numerator, s);
        json checks = json::object();
        auto add = [&](const char* name, const FractionEquality<Cert>& e, const Frac& a, const Frac& b) {
          checks[name] = verdict_word(e.verdict);
          if (e.u && e.v) witness(equality(a, b, *e.u, *e.v));
          if (e.verdict == Verdict::No) verdict_ = Verdict::No;
          else if (e.verdict == Verdict::Unknown && verdict_ == Verdict::Yes) verdict_ = Verdict::Unknown;
        };
        add("there_and_back", cmp.there_and_back, ore_.compose(cmp.forward, cmp.backward),
            ore_.identity(cmp.forward.numerator.source()));
        add("back_and_there", cmp.back_and_there, ore_.compose(cmp.backward, cmp.forward),
            ore_.identity(cmp.localised.object));
        add("maps_agree", cmp.maps_agree, ore_.compose(ore_.of(C_.cokernel(x.numerator).map), cmp.forward),
            cmp.localised.map);
        result_["comparison"] = checks;
        row("comparison", checks.dump());
      }
    } else {
      throw ParseError("loc needs eq, hom or coker");
    }
  }

  void induce() {
    const auto& m = module_arg(0);
    auto r = ind_.induce(m);
    const bool stable = r.status == InductionStatus::Stabilised;
    result_ = {{"status", stable ? "stabilised" : "symbolic"},
               {"module", C_.to_json(r.module)},
               {"describe", C_.describe(r.module)},
               {"chain_length", r.chain.steps.size()}};
    if (!stable) result_["symbolic"] = "[" + C_.describe(m) + "]";
    oracle_ = {{"note", r.oracle_note}, {"agrees", verdict_word(r.oracle_agrees)}};
    witness(codec_.write(r.chain));
    row("status", stable ? "stabilised at " + C_.describe(r.module) : "symbolic [" + C_.describe(m) + "]");
    row("oracle", r.oracle_note + " (agrees: " + verdict_word(r.oracle_agrees) + ")");
    verdict_ = Verdict::Yes;
    if (stable && r.oracle_agrees == Verdict::No) verdict_ = Verdict::No;
    note_bounds();
  }

  void kernel(bool of_induction) {
    const auto& m = module_arg(0);
    auto k = of_induction ? ind_.kernel_of_induction(m) : ind_.torsion_submodule(m);
    result_ = {{"object", C_.to_json(k.object)}, {"describe", C_.describe(k.object)},
               {"inclusion", C_.to_json(k.inclusion)}, {"method", k.method}, {"complete", verdict_word(k.complete)}};
    if (k.method == "torsion")
      witness({{"type", "submodule"}, {"inclusion", C_.to_json(k.inclusion)},
               {"quotient", codec_.write(engine_.kill_torsion(m))}});
    row(of_induction ? "kernel" : "torsion", C_.describe(k.object));
    row("method", k.method);
    verdict_ = k.complete;
  }

  void trivial() {
    auto r = ind_.is_sigma_trivial(module_arg(0));
    verdict_ = r.verdict;
    result_ = {{"reason", r.reason}};
    if (r.certificate) witness(codec_.write(*r.certificate));
    row("reason", r.reason);
  }

  void preloc() {
    auto sample = modules_from(0);
    const int len = inv_.length.value_or(bounds_.ext_bound);
    auto r = ind_.is_prelocalising(sample, len);
    json conds = json::array();
    for (const auto& c : r.conditions) {
      json ce = json::array();
      for (const auto& m : c.counterexamples) ce.push_back(C_.describe(m));
      conds.push_back({{"name", c.name}, {"verdict", verdict_word(c.verdict)}, {"counterexamples", ce},
                       {"detail", c.detail}});
      row(c.name, verdict_word(c.verdict) + (ce.empty() ? "" : " " + ce.dump()));
    }
    auto kt = ind_.kernels_torsion_check(sample);
    result_ = {{"conditions", conds}, {"kernels_torsion", verdict_word(kt.verdict)}, {"length_bound", len}};
    row("kernels torsion", verdict_word(kt.verdict));
    verdict_ = r.verdict();
  }

  void flat() {
    auto r = ind_.stable_flatness_check(modules_from(0), inv_.degree.value_or(1));
    json entries = json::array();
    for (const auto& e : r.entries) {
      entries.push_back({{"module", e.module}, {"tor_vanishes", verdict_word(e.tor_vanishes)}, {"detail", e.detail}});
      row("Tor_1(" + e.module + ", L)", e.detail);
    }
    result_ = {{"entries", entries},
               {"ring", {{"module", r.ring.module}, {"tor_vanishes", verdict_word(r.ring.tor_vanishes)},
                         {"detail", r.ring.detail}}},
               {"note", r.note}};
    row("Tor_1(L, L)", r.ring.detail);
    verdict_ = r.verdict;
  }

  void rank() {
    auto f = rho();
    const auto& name = arg(0, "a module or morphism name");
    if (P_.has_module(name)) {
      const long v = f(P_.module(name));
      result_ = {{"rank", v}};
      row("rank", std::to_string(v));
    } else {
      auto c = rank_of_map(C_, P_.morphism(name), f);
      result_ = {{"rank", c.rank}, {"source_rank", c.source_rank}, {"target_rank", c.target_rank}, {"full", c.full}};
      if (c.full) {
        auto w = codec_.write(c);
        w["rho"] = rho_name_;
        witness(w);
      }
      row("rank", std::to_string(c.rank));
      row("full", c.full ? "yes" : "no");
    }
    verdict_ = Verdict::Yes;
  }

  void full_map() {
    auto f = rho();
    auto phi = construct_full_map(C_, module_arg(0), f, bounds_.coeff_window, bounds_.cap);
    auto c = rank_of_map(C_, phi, f);
    result_ = {{"map", C_.to_json(phi)}, {"rank", c.rank}};
    auto w = codec_.write(c);
    w["rho"] = rho_name_;
    witness(w);
    row("source", C_.describe(phi.source()));
    verdict_ = c.full ? Verdict::Yes : Verdict::No;
  }

  void probe() {
    auto f = rho();
    std::vector<Module> targets = C_.sample_modules(2);
    for (const auto& m : P_.module_list()) targets.push_back(m);
    targets.push_back(C_.ring_module());
    FullMapOre<Cat> set(C_, f, targets, 1);
    OreCalculus<Cat, FullMapOre<Cat>> ore(set);
    auto corpus = inv_.args.empty() ? P_.module_list() : modules_from(0);
    auto p = division_ring_probe(set, corpus, 1, bounds_.cap);
    const auto one = ore.identity(C_.ring_module());
    for (const auto& x : p.elements) {
      auto w = codec_.write(x);
      w["set"] = "full";
      w["rho"] = rho_name_;
      witness(w);
      auto inv = ore.inverse(x);
      if (!inv) continue;
      auto e = ore.equal(ore.compose(x, *inv), one);
      if (e.u && e.v)
        witness({{"type", "equality"}, {"set", "full"}, {"rho", rho_name_},
                 {"x", codec_.write(ore.compose(x, *inv))}, {"y", codec_.write(one)},
                 {"u", codec_.write(*e.u)}, {"v", codec_.write(*e.v)}});
    }
    json mods = json::array();
    for (const auto& m : p.modules) {
      json j{{"module", C_.describe(m.module)}, {"rank", m.rank}, {"full_map_inverted", verdict_word(m.full_map_inverted)}};
      if (m.hom_classes) j["hom_classes"] = *m.hom_classes;
      mods.push_back(j);
    }
    result_ = {{"classes", p.classes},
               {"fractions", p.fractions},
               {"nonzero_invertible", verdict_word(p.nonzero_invertible)},
               {"zero_unique", verdict_word(p.zero_unique)},
               {"residue_matches", verdict_word(p.residue_matches)},
               {"modules", mods}};
    row("classes", std::to_string(p.classes));
    row("nonzero invertible", verdict_word(p.nonzero_invertible));
    row("residue matches", verdict_word(p.residue_matches));
    verdict_ = p.nonzero_invertible == Verdict::Yes && p.zero_unique == Verdict::Yes ? Verdict::Yes : Verdict::No;
    for (const auto& m : p.modules)
      if (m.full_map_inverted != Verdict::Yes) verdict_ = Verdict::No;
    note_bounds();
  }

  const Problem<Cat>& P_;
  const Invocation& inv_;
  const Cat& C_;
  std::pair<std::string, std::vector<Morphism>> sigma_;
  Bounds bounds_;
  SigmaEngine<Cat> engine_;
  WitnessCodec<Cat> codec_;
  SigmaOre<Cat> set_;
  OreCalculus<Cat, SigmaOre<Cat>> ore_;
  Induction<Cat> ind_;

  Verdict verdict_ = Verdict::Unknown;
  json result_ = json::object();
  json witnesses_ = json::array();
  json oracle_ = json::object();
  std::string rho_name_;
  std::vector<std::pair<std::string, std::string>> rows_;
};

}  // namespace

Report error_report(const std::string& command, const std::exception& e) {
  Report r;
  std::string kind = "Error";
  std::string message = e.what();
  if (auto* u = dynamic_cast<const Error*>(&e)) {
    kind = u->kind();
    message = u->message();
  }
  r.data = {{"command", command}, {"error", kind}, {"message", message}};
  r.summary = render({{"command", command}, {"error", e.what()}});
  r.exit_code = 1;
  return r;
}

Report run(const AnyProblem& problem, const Invocation& inv) {
  try {
    return std::visit(
        [&](const auto& P) {
          using P_t = std::decay_t<decltype(P)>;
          using Cat = typename std::decay_t<decltype(*std::declval<P_t>().cat)>;
          return Runner<Cat>(P, inv).run();
        },
        problem);
  } catch (const std::exception& e) {
    return error_report(inv.command, e);
  }
}

Report replay(const AnyProblem& problem, const json& report) {
  try {
    return std::visit(
        [&](const auto& P) {
          using P_t = std::decay_t<decltype(P)>;
          using Cat = typename std::decay_t<decltype(*std::declval<P_t>().cat)>;
          auto sigma = P.sigma_maps(report.value("sigma", std::string()));
          Bounds b = report.contains("bounds") ? parse_bounds(report.at("bounds")) : P.bounds;
          SigmaEngine<Cat> engine(*P.cat, sigma.second, b);
          const Cat& C = *P.cat;
          Replayer<Cat> rp(engine, [&C](const std::string& n) { return parse_rank(C, n); });
          auto res = rp.replay_all(report.value("witnesses", json::array()));
          Report r;
          r.data = {{"command", "replay " + report.value("command", std::string())},
                    {"verdict", res.ok ? "yes" : "no"},
                    {"checked", res.checked}};
          if (!res.ok) r.data["failure"] = res.failure;
          r.summary = render({{"replayed", report.value("command", std::string())},
                              {"witnesses", std::to_string(res.checked)},
                              {"verdict", res.ok ? "all verified" : "failed: " + res.failure}});
          r.exit_code = res.ok ? 0 : 1;
          return r;
        },
        problem);
  } catch (const std::exception& e) {
    return error_report("replay", e);
  }
}

}  // namespace uloc
