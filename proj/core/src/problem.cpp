#include "uloc/problem.hpp"

#include <fstream>
#include <sstream>

namespace uloc {

using json = nlohmann::json;

json RingDecl::to_json() const {
  json j{{"kind", kind}};
  if (kind != "integers") j["p"] = p;
  if (kind == "path_algebra") {
    j["vertices"] = vertices;
    json a = json::array();
    for (const auto& [s, t] : arrows) a.push_back({s, t});
    j["arrows"] = a;
  }
  return j;
}

json bounds_to_json(const Bounds& b) {
  return {{"depth", b.depth},         {"ext_bound", b.ext_bound}, {"coeff_window", b.coeff_window},
          {"word_length", b.word_length}, {"cap", b.cap},          {"seed", b.seed}};
}

Bounds parse_bounds(const json& j, Bounds b) {
  if (!j.is_object()) throw ParseError("\"bounds\" must be an object");
  auto small = [&](const char* key, int& slot, int lo, int hi) {
    if (!j.contains(key)) return;
    const auto& v = j.at(key);
    if (!v.is_number_integer()) throw ParseError(std::string("bound \"") + key + "\" must be an integer");
    long x = v.get<long>();
    if (x < lo || x > hi)
      throw BoundViolation(std::string("bound \"") + key + "\" must lie in " + std::to_string(lo) + ".." +
                           std::to_string(hi));
    slot = static_cast<int>(x);
  };
  small("depth", b.depth, 0, 12);
  small("ext_bound", b.ext_bound, 0, 8);
  small("coeff_window", b.coeff_window, 0, 6);
  small("word_length", b.word_length, 1, 32);
  if (j.contains("cap")) {
    long c = j.at("cap").get<long>();
    if (c < 1 || c > 1'000'000) throw BoundViolation("bound \"cap\" must lie in 1..1000000");
    b.cap = static_cast<std::size_t>(c);
  }
  if (j.contains("seed")) b.seed = j.at("seed").get<std::uint64_t>();
  for (auto it = j.begin(); it != j.end(); ++it) {
    static const std::vector<std::string> keys = {"depth", "ext_bound", "coeff_window", "word_length", "cap", "seed"};
    if (std::find(keys.begin(), keys.end(), it.key()) == keys.end())
      throw ParseError("unknown bound \"" + it.key() + "\"");
  }
  return b;
}

// ------------------------------------------------------------------ Problem

template <class Cat>
const typename Cat::Module& Problem<Cat>::module(const std::string& name) const {
  for (const auto& [n, m] : modules)
    if (n == name) return m;
  throw ReferenceError("no module named \"" + name + "\"");
}

template <class Cat>
const typename Cat::Morphism& Problem<Cat>::morphism(const std::string& name) const {
  for (const auto& [n, f] : morphisms)
    if (n == name) return f;
  throw ReferenceError("no morphism named \"" + name + "\"");
}

template <class Cat>
bool Problem<Cat>::has_module(const std::string& name) const {
  for (const auto& kv : modules)
    if (kv.first == name) return true;
  return false;
}

template <class Cat>
bool Problem<Cat>::has_morphism(const std::string& name) const {
  for (const auto& kv : morphisms)
    if (kv.first == name) return true;
  return false;
}

template <class Cat>
const FractionDecl& Problem<Cat>::fraction(const std::string& name) const {
  for (const auto& [n, f] : fractions)
    if (n == name) return f;
  throw ReferenceError("no fraction named \"" + name + "\"");
}

template <class Cat>
std::pair<std::string, std::vector<typename Cat::Morphism>> Problem<Cat>::sigma_maps(const std::string& name) const {
  if (sigma.empty()) {
    if (!name.empty()) throw ReferenceError("no sigma named \"" + name + "\"");
    return {"", {}};
  }
  for (const auto& [n, list] : sigma)
    if (name.empty() || n == name) {
      std::vector<Morphism> out;
      for (const auto& f : list) out.push_back(morphism(f));
      return {n, out};
    }
  throw ReferenceError("no sigma named \"" + name + "\"");
}

template <class Cat>
std::vector<typename Cat::Module> Problem<Cat>::module_list() const {
  std::vector<Module> out;
  for (const auto& kv : modules) out.push_back(kv.second);
  return out;
}

template <class Cat>
json Problem<Cat>::to_json() const {
  json mods = json::object(), maps = json::object(), sig = json::object(), fr = json::object();
  for (const auto& [n, m] : modules) mods[n] = cat->to_json(m);
  for (const auto& [n, f] : morphisms) {
    std::string s, t;
    for (const auto& [mn, m] : modules) {
      if (s.empty() && cat->same_module(m, f.source())) s = mn;
      if (t.empty() && cat->same_module(m, f.target())) t = mn;
    }
    json j = cat->to_json(f);
    if (!s.empty()) j["source"] = s;
    if (!t.empty()) j["target"] = t;
    maps[n] = j;
  }
  for (const auto& [n, list] : sigma) sig[n] = list;
  for (const auto& [n, d] : fractions) fr[n] = {{"numerator", d.numerator}, {"denominator", d.denominator}};
  json out{{"ring", ring.to_json()}, {"bounds", bounds_to_json(bounds)}, {"modules", mods}, {"morphisms", maps}};
  if (!sigma.empty()) out["sigma"] = sig;
  if (!ranks.empty()) out["rank"] = ranks;
  if (!fractions.empty()) out["fractions"] = fr;
  return out;
}

template struct Problem<IntegerCategory>;
template struct Problem<PolyCategory>;
template struct Problem<QuiverCategory>;

// ------------------------------------------------------------------ parsing

namespace {

// Coordinates in which the file states maps into and out of a module.
template <class Cat>
struct Coordinates {
  typename Cat::Mat to_canonical;
  typename Cat::Mat from_canonical;
};

template <class Ring>
struct EuclideanReader {
  using Cat = EuclideanCategory<Ring>;
  using Module = typename Cat::Module;
  using Morphism = typename Cat::Morphism;
  using Mat = typename Cat::Mat;

  const Cat& C;
  Problem<Cat>& P;
  std::map<std::string, Coordinates<Cat>> coords = {};

  void add_module(const std::string& name, const json& j) {
    if (!j.is_object()) throw ParseError("module \"" + name + "\" must be an object");
    typename Cat::Normalised n;
    const Ring& R = C.ring();
    if (j.contains("sum")) {
      std::vector<Module> parts;
      for (const auto& s : j.at("sum")) parts.push_back(P.module(s.get<std::string>()));
      auto sum = C.direct_sum(parts).object;
      Mat rel = C.relation_matrix(sum);
      n = C.normalise(rel, sum.generators());
    } else if (j.contains("relations")) {
      const std::size_t gens = j.at("generators").get<std::size_t>();
      const auto& rows = j.at("relations");
      Mat rel = C.matrix_from_json(rows, rows.size(), gens);
      n = C.normalise(rel, gens);
    } else if (j.contains("cyclic")) {
      Mat rel(1, 1);
      rel(0, 0) = R.from_json(j.at("cyclic"));
      n = C.normalise(rel, 1);
    } else if (j.contains("factors") || j.contains("free")) {
      std::vector<typename Ring::value_type> f;
      for (const auto& d : j.value("factors", json::array())) f.push_back(R.from_json(d));
      const std::size_t free = j.value("free", std::size_t{0});
      Mat rel(f.size(), f.size() + free);
      for (std::size_t i = 0; i < f.size(); ++i) rel(i, i) = f[i];
      n = C.normalise(rel, f.size() + free);
    } else {
      throw ParseError("module \"" + name + "\" needs factors, free, cyclic, relations or sum");
    }
    coords[name] = {n.to_canonical, n.from_canonical};
    P.modules.push_back({name, n.module});
  }

  // A module name, or an inline module in canonical form.
  std::pair<Module, Coordinates<Cat>> resolve(const json& ref) const {
    if (ref.is_string()) {
      const auto name = ref.get<std::string>();
      return {P.module(name), coords.at(name)};
    }
    auto m = C.module_from_json(ref);
    auto id = la::identity(C.ring(), m.generators());
    return {m, {id, id}};
  }

  Morphism literal(const std::string& name, const json& j) {
    auto [src, cs] = resolve(j.at("source"));
    auto [tgt, ct] = resolve(j.at("target"));
    Mat a = C.matrix_from_json(j.at("matrix"), cs.to_canonical.rows(), ct.to_canonical.rows());
    Mat canon = la::mul(C.ring(), la::mul(C.ring(), cs.from_canonical, a), ct.to_canonical);
    try {
      return C.morphism(src, tgt, canon);
    } catch (const Error& e) {
      throw IllDefinedMorphism("morphism \"" + name + "\": " + e.what());
    }
  }
};

struct QuiverReader {
  const QuiverCategory& C;
  Problem<QuiverCategory>& P;

  std::size_t vertex(const json& v) const {
    long x = v.get<long>();
    if (x < 1 || static_cast<std::size_t>(x) > C.shape().vertex_count())
      throw ReferenceError("vertex " + std::to_string(x) + " out of range");
    return static_cast<std::size_t>(x - 1);
  }

  void add_module(const std::string& name, const json& j) {
    if (!j.is_object()) throw ParseError("module \"" + name + "\" must be an object");
    Representation m;
    if (j.contains("projective")) m = C.projective(vertex(j.at("projective")));
    else if (j.contains("simple")) m = C.simple(vertex(j.at("simple")));
    else if (j.contains("sum")) {
      std::vector<Representation> parts;
      for (const auto& s : j.at("sum")) parts.push_back(P.module(s.get<std::string>()));
      m = C.direct_sum(parts).object;
    } else if (j.contains("dims")) m = C.module_from_json(j);
    else throw ParseError("module \"" + name + "\" needs projective, simple, dims or sum");
    P.modules.push_back({name, m});
  }

  Representation resolve(const json& ref) const {
    if (ref.is_string()) return P.module(ref.get<std::string>());
    return C.module_from_json(ref);
  }

  RepMorphism literal(const std::string&, const json& j) {
    if (j.contains("yoneda")) {
      const auto& y = j.at("yoneda");
      const auto v = vertex(y.at("vertex"));
      const auto& x = P.module(y.at("target").get<std::string>());
      auto e = C.matrix_from_json(json::array({y.at("element")}), 1, x.dim(v));
      return C.yoneda(v, x, e);
    }
    const auto src = resolve(j.at("source"));
    const auto tgt = resolve(j.at("target"));
    const auto& arr = j.at("maps");
    if (!arr.is_array() || arr.size() != C.shape().vertex_count())
      throw ShapeMismatch("\"maps\" needs one matrix per vertex");
    std::vector<FpMatrix> maps;
    for (std::size_t v = 0; v < C.shape().vertex_count(); ++v)
      maps.push_back(C.matrix_from_json(arr[v], src.dim(v), tgt.dim(v)));
    return C.morphism(src, tgt, std::move(maps));
  }
};

template <class Cat, class Reader>
Problem<Cat> read_body(const json& j, RingDecl ring, std::shared_ptr<const Cat> cat) {
  Problem<Cat> P;
  P.ring = std::move(ring);
  P.cat = cat;
  if (j.contains("bounds")) P.bounds = parse_bounds(j.at("bounds"));
  Reader r{*cat, P};
  const json mods = j.value("modules", json::object());
  if (!mods.is_object()) throw ParseError("\"modules\" must be an object");
  for (const auto& [name, lit] : mods.items()) {
    if (P.has_module(name)) throw ParseError("module \"" + name + "\" defined twice");
    r.add_module(name, lit);
  }
  const json maps = j.value("morphisms", json::object());
  if (!maps.is_object()) throw ParseError("\"morphisms\" must be an object");
  // Morphisms may refer to earlier ones; resolve in file order, retrying.
  std::vector<std::pair<std::string, json>> pending;
  for (const auto& [name, lit] : maps.items()) pending.push_back({name, lit});
  while (!pending.empty()) {
    std::vector<std::pair<std::string, json>> later;
    std::string last_error;
    for (const auto& [name, lit] : pending) {
      try {
        typename Cat::Morphism f = [&]() -> typename Cat::Morphism {
          if (lit.contains("compose")) {
            const auto& names = lit.at("compose");
            if (!names.is_array() || names.empty()) throw ParseError("\"compose\" needs a list of morphisms");
            auto acc = P.morphism(names[0].template get<std::string>());
            for (std::size_t i = 1; i < names.size(); ++i) {
              const auto& g = P.morphism(names[i].template get<std::string>());
              if (!cat->same_module(acc.target(), g.source()))
                throw ShapeMismatch("morphism \"" + name + "\": composite is not defined");
              acc = cat->compose(acc, g);
            }
            return acc;
          }
          if (lit.contains("identity")) return cat->identity(P.module(lit.at("identity").template get<std::string>()));
          if (lit.contains("zero")) {
            const auto& st = lit.at("zero");
            return cat->zero_map(P.module(st.at(0).template get<std::string>()), P.module(st.at(1).template get<std::string>()));
          }
          return r.literal(name, lit);
        }();
        P.morphisms.push_back({name, f});
      } catch (const ReferenceError& e) {
        later.push_back({name, lit});
        last_error = e.message();
      }
    }
    if (later.size() == pending.size()) throw ReferenceError(last_error);
    pending = std::move(later);
  }
  if (j.contains("sigma")) {
    const auto& s = j.at("sigma");
    auto add = [&](const std::string& n, const json& list) {
      std::vector<std::string> names;
      for (const auto& x : list) {
        names.push_back(x.get<std::string>());
        (void)P.morphism(names.back());
      }
      P.sigma.push_back({n, names});
    };
    if (s.is_array()) add("sigma", s);
    else
      for (const auto& [n, list] : s.items()) add(n, list);
  }
  if (j.contains("rank")) {
    const auto& rk = j.at("rank");
    if (rk.is_string()) P.ranks.push_back(rk.get<std::string>());
    else
      for (const auto& x : rk) P.ranks.push_back(x.get<std::string>());
    for (const auto& n : P.ranks) (void)parse_rank(*cat, n);
  }
  if (j.contains("fractions"))
    for (const auto& [n, d] : j.at("fractions").items()) {
      FractionDecl fd{d.at("numerator").template get<std::string>(), d.at("denominator").template get<std::string>()};
      (void)P.morphism(fd.numerator);
      (void)P.morphism(fd.denominator);
      P.fractions.push_back({n, fd});
    }
  for (auto it = j.begin(); it != j.end(); ++it) {
    static const std::vector<std::string> keys = {"ring", "bounds", "modules", "morphisms", "sigma", "rank", "fractions"};
    if (std::find(keys.begin(), keys.end(), it.key()) == keys.end())
      throw ParseError("unknown section \"" + it.key() + "\"");
  }
  return P;
}

}  // namespace

AnyProblem parse_problem(const json& j) {
  if (!j.is_object()) throw ParseError("problem must be a JSON object");
  if (!j.contains("ring")) throw ParseError("problem needs a \"ring\" declaration");
  const auto& rj = j.at("ring");
  RingDecl ring;
  ring.kind = rj.is_string() ? rj.get<std::string>() : rj.at("kind").get<std::string>();
  if (ring.kind == "integers") {
    auto cat = std::make_shared<const IntegerCategory>(IntegerRing{});
    return read_body<IntegerCategory, EuclideanReader<IntegerRing>>(j, ring, cat);
  }
  if (ring.kind == "poly") {
    ring.p = rj.at("p").get<std::uint32_t>();
    auto cat = std::make_shared<const PolyCategory>(PolyRing(ring.p));
    return read_body<PolyCategory, EuclideanReader<PolyRing>>(j, ring, cat);
  }
  if (ring.kind == "path_algebra") {
    ring.p = rj.at("p").get<std::uint32_t>();
    ring.vertices = rj.at("vertices").get<std::size_t>();
    std::vector<Arrow> arrows;
    for (const auto& a : rj.value("arrows", json::array())) {
      std::size_t s = a.at(0).get<std::size_t>(), t = a.at(1).get<std::size_t>();
      if (s < 1 || t < 1 || s > ring.vertices || t > ring.vertices)
        throw ReferenceError("arrow endpoint out of range");
      ring.arrows.push_back({s, t});
      arrows.push_back({s - 1, t - 1});
    }
    auto cat = std::make_shared<const QuiverCategory>(QuiverShape(ring.vertices, arrows), ring.p);
    return read_body<QuiverCategory, QuiverReader>(j, ring, cat);
  }
  throw ParseError("unknown ring kind \"" + ring.kind + "\"");
}

AnyProblem parse_problem(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + e.what());
  }
  try {
    return parse_problem(j);
  } catch (const json::exception& e) {
    throw ParseError(e.what());
  }
}

AnyProblem load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_problem(ss.str());
}

// ------------------------------------------------------------------ rank names

RankFunction<IntegerCategory> parse_rank(const IntegerCategory& C, const std::string& name) {
  if (name == "rational" || name == "0" || name == "p:0") return rational_rank(C);
  if (name == "generators") return generator_count(C);
  if (name.rfind("p:", 0) == 0) {
    long p = 0;
    try {
      p = std::stol(name.substr(2));
    } catch (const std::exception&) {
      throw ParseError("bad rank function \"" + name + "\"");
    }
    return rank_mod_p(C, p);
  }
  throw ParseError("unknown rank function \"" + name + "\"");
}

RankFunction<PolyCategory> parse_rank(const PolyCategory& C, const std::string& name) {
  if (name == "rational") return rational_rank(C);
  if (name == "generators") return generator_count(C);
  if (name.rfind("irreducible:", 0) == 0) {
    json coeffs;
    try {
      coeffs = json::parse(name.substr(12));
    } catch (const json::exception&) {
      throw ParseError("bad rank function \"" + name + "\"");
    }
    auto q = C.ring().from_json(coeffs);
    if (C.ring().length(q) != 1) throw ParseError("\"" + name + "\" is not irreducible");
    auto r = fibre_rank(C, q);
    r.name = name;
    return r;
  }
  throw ParseError("unknown rank function \"" + name + "\"");
}

RankFunction<QuiverCategory> parse_rank(const QuiverCategory& C, const std::string& name) {
  if (name.rfind("vertex:", 0) != 0) throw ParseError("unknown rank function \"" + name + "\"");
  std::vector<long> w;
  std::stringstream ss(name.substr(7));
  std::string part;
  while (std::getline(ss, part, ',')) {
    try {
      w.push_back(std::stol(part));
    } catch (const std::exception&) {
      throw ParseError("bad rank function \"" + name + "\"");
    }
  }
  return vertex_rank(C, w);
}

}  // namespace uloc
