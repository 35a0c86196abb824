#include "poscat/completion.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include "poscat/diagram.hpp"
#include "poscat/limits.hpp"

namespace poscat {

  NotWeaklyLex::NotWeaklyLex(Report report)
      : Error("NotWeaklyLex: the category lacks weak finite limits"), _report(std::move(report)) {}

  SizeGuard SizeGuard::from_environment() {
    SizeGuard g;
    char const* env = std::getenv("POSCAT_SIZE_GUARD");
    if (env == nullptr || *env == '\0') {
      return g;
    }
    std::istringstream in(env);
    std::size_t        objs = 0;
    if (!(in >> objs)) {
      throw Error("POSCAT_SIZE_GUARD: expected \"objects\" or \"objects,morphisms\"");
    }
    g.objects = objs;
    char comma = 0;
    if (in >> comma) {
      std::size_t mors = 0;
      if (comma != ',' || !(in >> mors)) {
        throw Error("POSCAT_SIZE_GUARD: expected \"objects\" or \"objects,morphisms\"");
      }
      g.morphisms = mors;
    }
    return g;
  }

  namespace {

    std::vector<std::string> names(FinPosCategory const& c, std::initializer_list<MorphismId> ms) {
      std::vector<std::string> out;
      for (auto m : ms) {
        out.push_back(c.morphism_name(m));
      }
      return out;
    }

    // Fills out (when given) with witnesses; stops at the first failure.
    Verdict analyze(FinPosCategory const& c, Span const& s, Pseudocongruence* out) {
      if (!c.parallel(s.r0, s.r1) || c.dom(s.r0) != s.apex) {
        throw Error("pseudocongruence legs " + c.morphism_name(s.r0) + ", "
                    + c.morphism_name(s.r1) + " are not a span");
      }
      auto const x = c.cod(s.r0);
      for (auto a : c.objects()) {
        // Least u per (r0∘u, r1∘u).
        std::map<std::pair<MorphismId, MorphismId>, MorphismId> image;
        for (auto u : c.hom(a, s.apex)) {
          image.try_emplace({c.compose(s.r0, u), c.compose(s.r1, u)}, u);
        }
        auto const into_x = c.hom(a, x);
        for (auto a0 : into_x) {
          for (auto a1 : into_x) {
            if (!c.leq(a0, a1)) {
              continue;
            }
            auto const it = image.find({a0, a1});
            if (it == image.end()) {
              return Verdict::no({{"order-reflexive", false}, {"pair", names(c, {a0, a1})}});
            }
            if (out) {
              out->reflexivity.push_back({a0, a1, it->second});
            }
          }
        }
        auto const into_r = c.hom(a, s.apex);
        for (auto u : into_r) {
          for (auto v : into_r) {
            if (c.compose(s.r1, u) != c.compose(s.r0, v)) {
              continue;
            }
            auto const it = image.find({c.compose(s.r0, u), c.compose(s.r1, v)});
            if (it == image.end()) {
              return Verdict::no({{"transitive", false}, {"pair", names(c, {u, v})}});
            }
            if (out) {
              out->transitivity.push_back({u, v, it->second});
            }
          }
        }
      }
      return Verdict::yes();
    }

    std::string object_label(FinPosCategory const& c, Pseudocongruence const& p) {
      return "⟨" + c.object_name(p.carrier) + ";" + c.object_name(p.relation) + ","
             + c.morphism_name(p.r0) + "," + c.morphism_name(p.r1) + "⟩";
    }

    // Some f̄: R -> S with s0∘f̄ = f∘r0 and s1∘f̄ = f∘r1.
    std::optional<MorphismId> find_lift(FinPosCategory const&   c,
                                        Pseudocongruence const& from,
                                        Pseudocongruence const& to,
                                        MorphismId              f) {
      auto const a = c.compose(f, from.r0);
      auto const b = c.compose(f, from.r1);
      for (auto l : c.hom(from.relation, to.relation)) {
        if (c.compose(to.r0, l) == a && c.compose(to.r1, l) == b) {
          return l;
        }
      }
      return std::nullopt;
    }

    // Some Σ: X -> S with s0∘Σ = f and s1∘Σ = g.
    std::optional<MorphismId>
    find_sigma(FinPosCategory const& c, Pseudocongruence const& to, MorphismId f, MorphismId g) {
      for (auto s : c.hom(c.dom(f), to.relation)) {
        if (c.compose(to.r0, s) == f && c.compose(to.r1, s) == g) {
          return s;
        }
      }
      return std::nullopt;
    }

  }  // namespace

  Verdict check_pseudocongruence(FinPosCategory const& c, Span const& s) {
    return analyze(c, s, nullptr);
  }

  std::optional<Pseudocongruence> make_pseudocongruence(FinPosCategory const& c, Span const& s) {
    Pseudocongruence p{c.cod(s.r0), s.apex, s.r0, s.r1, {}, {}};
    if (!analyze(c, s, &p)) {
      return std::nullopt;
    }
    return p;
  }

  std::vector<Pseudocongruence> enumerate_pseudocongruences(FinPosCategory const& c) {
    if (auto r = check_weakly_lex(c); !r.verdict()) {
      throw NotWeaklyLex(std::move(r));
    }
    std::vector<Pseudocongruence> out;
    for (auto x : c.objects()) {
      for (auto rel : c.objects()) {
        auto const legs = c.hom(rel, x);
        for (auto r0 : legs) {
          for (auto r1 : legs) {
            if (auto p = make_pseudocongruence(c, {rel, r0, r1})) {
              out.push_back(std::move(*p));
            }
          }
        }
      }
    }
    return out;
  }

  std::optional<ObjectId> ExCompletion::find_object(ObjectId x, Span const& s) const {
    if (base->cod(s.r0) != x) {
      return std::nullopt;
    }
    auto const it = by_span.find({s.apex, s.r0, s.r1});
    if (it == by_span.end()) {
      return std::nullopt;
    }
    return it->second;
  }

  ObjectId ExCompletion::object_of(ObjectId x, Span const& s) const {
    if (auto i = find_object(x, s)) {
      return *i;
    }
    throw Error("span (" + base->object_name(s.apex) + "; " + base->morphism_name(s.r0) + ", "
                + base->morphism_name(s.r1) + ") is not a pseudocongruence");
  }

  std::optional<MorphismId> ExCompletion::find_class(ObjectId i, ObjectId j, MorphismId f) const {
    auto const it = by_member.find({i, j, f});
    if (it == by_member.end()) {
      return std::nullopt;
    }
    return it->second;
  }

  MorphismId ExCompletion::class_of(ObjectId i, ObjectId j, MorphismId f) const {
    if (auto m = find_class(i, j, f)) {
      return *m;
    }
    throw Error("morphism " + base->morphism_name(f) + " does not lift from "
                + cat->object_name(i) + " to " + cat->object_name(j));
  }

  ExCompletion build_exact_completion(CategoryPtr c, SizeGuard guard) {
    auto const&  base = *c;
    ExCompletion e;
    e.base    = c;
    e.objects = enumerate_pseudocongruences(base);
    auto const n = e.objects.size();
    if (n > guard.objects) {
      throw SizeGuardExceeded("exact completion has " + std::to_string(n)
                              + " objects, above the guard of "
                              + std::to_string(guard.objects));
    }
    for (std::size_t i = 0; i < n; ++i) {
      auto const& p = e.objects[i];
      e.by_span.emplace(std::tuple{p.relation, p.r0, p.r1}, object_id(i));
    }

    // Classes per hom pair, numbered in (source, target, representative)
    // order.
    for (std::size_t i = 0; i < n; ++i) {
      auto const& from = e.objects[i];
      for (std::size_t j = 0; j < n; ++j) {
        auto const& to = e.objects[j];
        std::vector<std::pair<MorphismId, MorphismId>> liftable;  // (f, f̄)
        for (auto f : base.hom(from.carrier, to.carrier)) {
          if (auto l = find_lift(base, from, to, f)) {
            liftable.emplace_back(f, *l);
          }
        }
        auto const first = e.morphisms.size();
        for (auto [f, lift] : liftable) {
          bool placed = false;
          for (auto k = first; k < e.morphisms.size() && !placed; ++k) {
            auto& cls = e.morphisms[k];
            auto  rep = cls.representative;
            if (find_sigma(base, to, f, rep) && find_sigma(base, to, rep, f)) {
              cls.members.push_back(f);
              placed = true;
            }
          }
          if (!placed) {
            e.morphisms.push_back({object_id(i), object_id(j), f, lift, {f}});
          }
          if (e.morphisms.size() > guard.morphisms) {
            throw SizeGuardExceeded("exact completion exceeds the guard of "
                                    + std::to_string(guard.morphisms) + " morphisms");
          }
        }
        // Mutual ≼ must be an equivalence on each class.
        for (auto k = first; k < e.morphisms.size(); ++k) {
          auto const& members = e.morphisms[k].members;
          for (auto f : members) {
            for (auto g : members) {
              if (!find_sigma(base, to, f, g)) {
                throw ConstructionMismatch("≼ is not transitive on the class of "
                                           + base.morphism_name(e.morphisms[k].representative));
              }
            }
          }
          for (auto f : members) {
            e.by_member.emplace(std::tuple{object_id(i), object_id(j), f}, morphism_id(k));
          }
        }
      }
    }

    CategoryTables t;
    for (auto const& p : e.objects) {
      t.object_names.push_back(object_label(base, p));
    }
    for (auto const& m : e.morphisms) {
      t.morphism_names.push_back("[" + base.morphism_name(m.representative)
                                 + "]:" + std::to_string(index(m.source)) + "->"
                                 + std::to_string(index(m.target)));
      t.dom.push_back(m.source);
      t.cod.push_back(m.target);
    }
    for (std::size_t i = 0; i < n; ++i) {
      auto const x = e.objects[i].carrier;
      t.identity.push_back(e.class_of(object_id(i), object_id(i), base.identity(x)));
    }

    // Composition on representatives, checked against every pair of members.
    for (std::size_t a = 0; a < e.morphisms.size(); ++a) {
      auto const& f = e.morphisms[a];
      for (std::size_t b = 0; b < e.morphisms.size(); ++b) {
        auto const& g = e.morphisms[b];
        if (g.source != f.target) {
          continue;
        }
        auto const result = e.class_of(f.source, g.target,
                                       base.compose(g.representative, f.representative));
        for (auto fm : f.members) {
          for (auto gm : g.members) {
            if (e.find_class(f.source, g.target, base.compose(gm, fm)) != result) {
              throw ConstructionMismatch("composition of classes is not well defined at "
                                         + base.morphism_name(gm) + " o "
                                         + base.morphism_name(fm));
            }
          }
        }
        t.compose.push_back({morphism_id(b), morphism_id(a), result});
      }
    }

    for (std::size_t a = 0; a < e.morphisms.size(); ++a) {
      auto const& f = e.morphisms[a];
      for (std::size_t b = 0; b < e.morphisms.size(); ++b) {
        auto const& g = e.morphisms[b];
        if (a == b || f.source != g.source || f.target != g.target) {
          continue;
        }
        if (auto s = find_sigma(base, e.objects[index(f.target)], f.representative,
                                g.representative)) {
          t.order.emplace_back(morphism_id(a), morphism_id(b));
          e.order.push_back({morphism_id(a), morphism_id(b), *s});
        }
      }
    }

    try {
      e.cat = std::make_shared<FinPosCategory const>(validate_category(t));
    } catch (ValidationError const& err) {
      throw ConstructionMismatch(std::string("completion tables are invalid: ") + err.what());
    }
    return e;
  }

  nlohmann::json provenance_json(ExCompletion const& e) {
    auto const& b    = *e.base;
    auto        objs = nlohmann::json::array();
    for (auto const& p : e.objects) {
      auto refl = nlohmann::json::array();
      for (auto const& w : p.reflexivity) {
        refl.push_back(names(b, {w.a0, w.a1, w.u}));
      }
      auto trans = nlohmann::json::array();
      for (auto const& w : p.transitivity) {
        trans.push_back(names(b, {w.a, w.b, w.t}));
      }
      objs.push_back({{"carrier", b.object_name(p.carrier)},
                      {"relation", b.object_name(p.relation)},
                      {"r0", b.morphism_name(p.r0)},
                      {"r1", b.morphism_name(p.r1)},
                      {"reflexivity", refl},
                      {"transitivity", trans}});
    }
    auto mors = nlohmann::json::array();
    for (std::size_t k = 0; k < e.morphisms.size(); ++k) {
      auto const& m       = e.morphisms[k];
      auto        members = nlohmann::json::array();
      for (auto f : m.members) {
        members.push_back(b.morphism_name(f));
      }
      mors.push_back({{"id", e.cat->morphism_name(morphism_id(k))},
                      {"representative", b.morphism_name(m.representative)},
                      {"lift", b.morphism_name(m.lift)},
                      {"members", members}});
    }
    auto order = nlohmann::json::array();
    for (auto const& w : e.order) {
      order.push_back({e.cat->morphism_name(w.lesser), e.cat->morphism_name(w.greater),
                       b.morphism_name(w.sigma)});
    }
    return {{"objects", objs}, {"morphisms", mors}, {"order", order}};
  }

  std::vector<std::vector<Span>> identity_comma_choices(FinPosCategory const& c) {
    std::vector<std::vector<Span>> out;
    for (auto x : c.objects()) {
      auto const id = c.identity(x);
      auto&      v  = out.emplace_back();
      for (auto const& cone : all_weak_limits(c, specs::comma(c, id, id))) {
        v.push_back({cone.apex, cone.legs[0], cone.legs[1]});
      }
    }
    return out;
  }

  GammaFunctor gamma(ExCompletion const& e) {
    auto const&       c = *e.base;
    std::vector<Span> commas;
    for (auto x : c.objects()) {
      auto const id = c.identity(x);
      auto const k  = weak_comma(c, id, id);
      if (!k) {
        throw NotWeaklyLex(check_weakly_lex(c));
      }
      commas.push_back({k->cone.apex, k->cone.legs[0], k->cone.legs[1]});
    }
    return gamma(e, commas);
  }

  GammaFunctor gamma(ExCompletion const& e, std::vector<Span> const& commas) {
    auto const& c = *e.base;
    PosFunctor  f{e.base, e.cat, {}, {}};
    for (auto x : c.objects()) {
      f.objects.push_back(e.object_of(x, commas[index(x)]));
    }
    for (std::size_t i = 0; i < c.number_of_morphisms(); ++i) {
      auto const m = morphism_id(i);
      f.morphisms.push_back(e.class_of(f(c.dom(m)), f(c.cod(m)), m));
    }
    GammaFunctor g{validate_functor(std::move(f)), commas};
    if (auto v = check_fully_order_faithful(g.functor); !v) {
      throw ConstructionMismatch("Γ is not fully order-faithful: " + v.witness.dump());
    }
    return g;
  }

  namespace {

    // An isomorphism u with u∘a = b, for a and b out of one object.
    std::optional<MorphismId> iso_under(FinPosCategory const& c, MorphismId a, MorphismId b) {
      if (c.dom(a) != c.dom(b)) {
        return std::nullopt;
      }
      for (auto u : c.hom(c.cod(a), c.cod(b))) {
        if (c.compose(u, a) == b && is_isomorphism(c, u)) {
          return u;
        }
      }
      return std::nullopt;
    }

    PresentationRow row_of(ExCompletion const& e, GammaFunctor const& g, ObjectId i) {
      auto const& p = e.object(i);
      auto const& G = g.functor;
      return {G(p.relation),
              G(p.carrier),
              i,
              G(p.r0),
              G(p.r1),
              e.class_of(G(p.carrier), i, e.base->identity(p.carrier))};
    }

    void check_row(Report& r, FinPosCategory const& cat, PresentationRow const& row,
                   std::string const& which) {
      r.record(which + " row is a coinserter",
               is_coinserter(cat, row.d0, row.d1, row.q)
                   ? Verdict::yes()
                   : Verdict::no({{"q", cat.morphism_name(row.q)}}));
      auto const found = search_coinserter(cat, row.d0, row.d1);
      if (!found) {
        r.fail(which + " row matches the searched coinserter", {{"search", "no coinserter"}});
      } else if (auto u = iso_under(cat, found->q, row.q)) {
        r.pass(which + " row matches the searched coinserter", cat.morphism_name(*u));
      } else {
        r.fail(which + " row matches the searched coinserter",
               {{"searched", cat.morphism_name(found->q)}, {"row", cat.morphism_name(row.q)}});
      }
    }

  }  // namespace

  PresentationDiagram coinserter_presentation(ExCompletion const& e,
                                              GammaFunctor const& g,
                                              MorphismId          f) {
    auto const& cat = *e.cat;
    auto const& m   = e.morphism(f);
    PresentationDiagram d;
    d.morphism = f;
    d.source   = row_of(e, g, m.source);
    d.target   = row_of(e, g, m.target);
    d.top      = g.functor(m.lift);
    d.middle   = g.functor(m.representative);
    d.checks.command = "presentation " + cat.morphism_name(f);

    check_row(d.checks, cat, d.source, "source");
    check_row(d.checks, cat, d.target, "target");
    auto square = [&](std::string name, MorphismId a, MorphismId b) {
      if (a == b) {
        d.checks.pass(std::move(name));
      } else {
        d.checks.fail(std::move(name), {cat.morphism_name(a), cat.morphism_name(b)});
      }
    };
    square("square d0", cat.compose(d.middle, d.source.d0), cat.compose(d.target.d0, d.top));
    square("square d1", cat.compose(d.middle, d.source.d1), cat.compose(d.target.d1, d.top));
    square("square q", cat.compose(f, d.source.q), cat.compose(d.target.q, d.middle));
    return d;
  }

  std::string_view to_string(Construction k) noexcept {
    switch (k) {
      case Construction::terminal:
        return "terminal";
      case Construction::product:
        return "product";
      case Construction::inserter:
        return "inserter";
      case Construction::comma:
        return "comma";
      case Construction::pullback:
        return "pullback";
      case Construction::so_ff:
        return "so_ff";
      case Construction::effective_congruence:
        return "effective_congruence";
      case Construction::so_from_identities:
        return "so_from_identities";
    }
    return "?";
  }

  std::vector<Construction> all_constructions() {
    return {Construction::terminal,
            Construction::product,
            Construction::inserter,
            Construction::comma,
            Construction::pullback,
            Construction::so_ff,
            Construction::effective_congruence,
            Construction::so_from_identities};
  }

  namespace {

    Term at(std::size_t v, MorphismId f) {
      return {v, f};
    }
    Constraint eq(Term a, Term b) {
      return {a, Comparison::equal, b};
    }

    class Crosscheck {
     public:
      explicit Crosscheck(ExCompletion const& e) : _e(e), _b(*e.base), _c(*e.cat) {}

      Report run(Construction kind) {
        _r.command = "crosscheck " + std::string(to_string(kind));
        _count     = 0;
        switch (kind) {
          case Construction::terminal:
            terminal();
            break;
          case Construction::product:
            for (auto i : _c.objects()) {
              for (auto j : _c.objects()) {
                product(i, j);
              }
            }
            break;
          case Construction::inserter:
            for_parallel([&](MorphismId f, MorphismId g) { inserter(f, g); });
            break;
          case Construction::comma:
            for_cospan([&](MorphismId f, MorphismId g) { comma(f, g, false); });
            break;
          case Construction::pullback:
            for_cospan([&](MorphismId f, MorphismId g) { comma(f, g, true); });
            break;
          case Construction::so_ff:
            for (std::size_t k = 0; k < _c.number_of_morphisms(); ++k) {
              so_ff(morphism_id(k));
            }
            break;
          case Construction::effective_congruence:
            for (auto const& s : all_congruences(_c)) {
              effective(s);
            }
            break;
          case Construction::so_from_identities:
            so_from_identities();
            break;
        }
        _r.pass("instances checked", _count);
        return std::move(_r);
      }

     private:
      template <typename F>
      void for_parallel(F&& visit) {
        for (std::size_t k = 0; k < _c.number_of_morphisms(); ++k) {
          auto const f = morphism_id(k);
          for (auto g : _c.hom(_c.dom(f), _c.cod(f))) {
            visit(f, g);
          }
        }
      }
      template <typename F>
      void for_cospan(F&& visit) {
        for (std::size_t k = 0; k < _c.number_of_morphisms(); ++k) {
          auto const f = morphism_id(k);
          for (auto g : _c.incoming(_c.cod(f))) {
            visit(f, g);
          }
        }
      }

      std::optional<Cone> weak(DiagramSpec const& spec, std::string const& what) {
        auto found = search_weak_limit(_b, spec);
        if (!found) {
          _r.fail(what + ": base weak limit " + spec.name + " missing", nlohmann::json::object());
          return std::nullopt;
        }
        return found->cone;
      }

      std::optional<ObjectId> object(ObjectId x, Span const& s, std::string const& what) {
        auto i = _e.find_object(x, s);
        if (!i) {
          _r.fail(what + ": recipe object is not a pseudocongruence", span_json(_b, s));
        }
        return i;
      }

      // The Γ-shaped weak limit over (P; πX, πY) for relations R on X and S
      // on Y, as an object of the completion.
      std::optional<ObjectId> gamma_over(ObjectId p, MorphismId px, MorphismId py,
                                         Pseudocongruence const& r, Pseudocongruence const& s,
                                         std::string const& what) {
        DiagramSpec spec{"Γ",
                         {r.relation, s.relation, p, p},
                         {},
                         {eq(at(0, r.r0), at(2, px)),
                          eq(at(0, r.r1), at(3, px)),
                          eq(at(1, s.r0), at(2, py)),
                          eq(at(1, s.r1), at(3, py))}};
        auto cone = weak(spec, what);
        if (!cone) {
          return std::nullopt;
        }
        return object(p, {cone->apex, cone->legs[2], cone->legs[3]}, what);
      }

      void compare(DiagramSpec const& spec, Cone const& recipe, std::string const& what) {
        ++_count;
        auto found = search_strict_limit(_c, spec);
        if (!found) {
          _r.fail(what, {{"search", "no strict limit in the completion"}});
          return;
        }
        if (!cone_isomorphism(_c, recipe, found->cone)) {
          _r.fail(what, {{"recipe", cone_json(_c, recipe)}, {"search", cone_json(_c, found->cone)}});
        }
      }

      void terminal() {
        auto t = weak(specs::terminal(), "terminal");
        if (!t) {
          return;
        }
        auto w = weak(specs::product(t->apex, t->apex), "terminal");
        if (!w) {
          return;
        }
        auto i = object(t->apex, {w->apex, w->legs[0], w->legs[1]}, "terminal");
        if (i) {
          compare(specs::terminal(), Cone{*i, {}}, "terminal");
        }
      }

      void product(ObjectId i, ObjectId j) {
        auto const  what = "product " + _c.object_name(i) + " x " + _c.object_name(j);
        auto const& r    = _e.object(i);
        auto const& s    = _e.object(j);
        auto        p    = weak(specs::product(r.carrier, s.carrier), what);
        if (!p) {
          return;
        }
        auto k = gamma_over(p->apex, p->legs[0], p->legs[1], r, s, what);
        if (!k) {
          return;
        }
        Cone recipe{*k, {_e.class_of(*k, i, p->legs[0]), _e.class_of(*k, j, p->legs[1])}};
        compare(specs::product(i, j), recipe, what);
      }

      void inserter(MorphismId fc, MorphismId gc) {
        auto const  what = "inserter " + _c.morphism_name(fc) + " <= " + _c.morphism_name(gc);
        auto const& fm   = _e.morphism(fc);
        auto const& r    = _e.object(fm.source);
        auto const& s    = _e.object(fm.target);
        auto const  f    = fm.representative;
        auto const  g    = _e.morphism(gc).representative;
        DiagramSpec first{"E", {r.carrier, s.relation}, {}, {eq(at(1, s.r0), at(0, f)),
                                                             eq(at(1, s.r1), at(0, g))}};
        auto ew = weak(first, what);
        if (!ew) {
          return;
        }
        auto const  e = ew->legs[0];
        DiagramSpec second{"R̃", {ew->apex, ew->apex, r.relation}, {}, {eq(at(2, r.r0), at(0, e)),
                                                                     eq(at(2, r.r1), at(1, e))}};
        auto rt = weak(second, what);
        if (!rt) {
          return;
        }
        auto k = object(ew->apex, {rt->apex, rt->legs[0], rt->legs[1]}, what);
        if (!k) {
          return;
        }
        auto leg = _e.find_class(*k, fm.source, e);
        if (!leg) {
          _r.fail(what + ": e does not lift", nlohmann::json::object());
          return;
        }
        compare(specs::inserter(_c, fc, gc), Cone{*k, {*leg}}, what);
      }

      void comma(MorphismId fc, MorphismId gc, bool pullback) {
        auto const  what = std::string(pullback ? "pullback " : "comma ") + _c.morphism_name(fc)
                          + ", " + _c.morphism_name(gc);
        auto const& fm = _e.morphism(fc);
        auto const& gm = _e.morphism(gc);
        auto const& r  = _e.object(fm.source);
        auto const& s  = _e.object(gm.source);
        auto const& t  = _e.object(fm.target);
        auto const  f  = fm.representative;
        auto const  g  = gm.representative;
        DiagramSpec spec{"C", {r.carrier, s.carrier, t.relation}, {}, {}};
        spec.constraints = {eq(at(2, t.r0), at(0, f)), eq(at(2, t.r1), at(1, g))};
        if (pullback) {
          spec.vertices.push_back(t.relation);
          spec.constraints.push_back(eq(at(3, t.r0), at(1, g)));
          spec.constraints.push_back(eq(at(3, t.r1), at(0, f)));
        }
        auto cw = weak(spec, what);
        if (!cw) {
          return;
        }
        auto k = gamma_over(cw->apex, cw->legs[0], cw->legs[1], r, s, what);
        if (!k) {
          return;
        }
        auto l0 = _e.find_class(*k, fm.source, cw->legs[0]);
        auto l1 = _e.find_class(*k, gm.source, cw->legs[1]);
        if (!l0 || !l1) {
          _r.fail(what + ": projections do not lift", nlohmann::json::object());
          return;
        }
        compare(pullback ? specs::pullback(_c, fc, gc) : specs::comma(_c, fc, gc),
                Cone{*k, {*l0, *l1}}, what);
      }

      void so_ff(MorphismId fc) {
        auto const  what = "so_ff " + _c.morphism_name(fc);
        auto const& fm   = _e.morphism(fc);
        auto const& r    = _e.object(fm.source);
        auto const& s    = _e.object(fm.target);
        auto const  f    = fm.representative;
        DiagramSpec spec{"I", {r.carrier, r.carrier, s.relation}, {}, {eq(at(2, s.r0), at(0, f)),
                                                                      eq(at(2, s.r1), at(1, f))}};
        auto iw = weak(spec, what);
        if (!iw) {
          return;
        }
        auto k = object(r.carrier, {iw->apex, iw->legs[0], iw->legs[1]}, what);
        if (!k) {
          return;
        }
        ++_count;
        auto const e = _e.find_class(fm.source, *k, _b.identity(r.carrier));
        auto const m = _e.find_class(*k, fm.target, f);
        if (!e || !m) {
          _r.fail(what + ": factors do not lift", nlohmann::json::object());
          return;
        }
        if (_c.compose(*m, *e) != fc) {
          _r.fail(what + ": factors do not compose", nlohmann::json::object());
        }
        if (auto v = check_so(_c, *e); !v) {
          _r.fail(what + ": so part", v.witness);
        }
        if (auto v = check_ff(_c, *m); !v) {
          _r.fail(what + ": ff part", v.witness);
        }
        auto found = so_ff_factorize(_c, fc);
        if (!found) {
          _r.fail(what, {{"search", "no factorization"}});
          return;
        }
        bool matched = false;
        for (auto u : _c.hom(*k, found->middle)) {
          if (is_isomorphism(_c, u) && _c.compose(u, *e) == found->e
              && _c.compose(found->m, u) == *m) {
            matched = true;
            break;
          }
        }
        if (!matched) {
          _r.fail(what, {{"recipe", {_c.morphism_name(*e), _c.morphism_name(*m)}},
                         {"search", {_c.morphism_name(found->e), _c.morphism_name(found->m)}}});
        }
      }

      void effective(Span const& cong) {
        auto const  what = "effective congruence " + _c.morphism_name(cong.r0) + ", "
                          + _c.morphism_name(cong.r1);
        auto const& h0m = _e.morphism(cong.r0);
        auto const& x   = _e.object(h0m.source);
        auto const& s   = _e.object(h0m.target);
        auto const  h0  = h0m.representative;
        auto const  h1  = _e.morphism(cong.r1).representative;
        // Vertices p0, p0', s', p1', p1.
        DiagramSpec spec{"S'",
                         {s.relation, s.relation, x.carrier, s.relation, s.relation},
                         {},
                         {eq(at(0, s.r1), at(1, s.r0)),
                          eq(at(0, s.r0), at(2, h0)),
                          eq(at(1, s.r1), at(2, h0)),
                          eq(at(2, h1), at(4, s.r0)),
                          eq(at(2, h1), at(3, s.r1)),
                          eq(at(4, s.r1), at(3, s.r0))}};
        auto sw = weak(spec, what);
        if (!sw) {
          return;
        }
        Span quotient{sw->apex, _b.compose(s.r0, sw->legs[1]), _b.compose(s.r1, sw->legs[4])};
        auto k = object(s.carrier, quotient, what);
        if (!k) {
          return;
        }
        ++_count;
        auto q = _e.find_class(h0m.target, *k, _b.identity(s.carrier));
        if (!q) {
          _r.fail(what + ": 1_Y does not lift", nlohmann::json::object());
          return;
        }
        if (!is_coinserter(_c, cong.r0, cong.r1, *q)) {
          _r.fail(what + ": recipe is not a coinserter", {{"q", _c.morphism_name(*q)}});
        }
        auto kernel = kernel_congruence(_c, *q);
        if (!kernel || !same_subobject(_c, *kernel, cong)) {
          _r.fail(what + ": kernel of the quotient differs", {{"q", _c.morphism_name(*q)}});
        }
        auto found = search_coinserter(_c, cong.r0, cong.r1);
        if (!found) {
          _r.fail(what, {{"search", "no coinserter"}});
        } else if (!iso_under(_c, found->q, *q)) {
          _r.fail(what, {{"recipe", _c.morphism_name(*q)}, {"search", _c.morphism_name(found->q)}});
        }
      }

      void so_from_identities() {
        auto const classes = classify_morphisms(_c);
        for (std::size_t k = 0; k < _c.number_of_morphisms(); ++k) {
          if (!classes.so[k]) {
            continue;
          }
          ++_count;
          auto const f     = morphism_id(k);
          bool       found = false;
          for (std::size_t l = 0; l < _c.number_of_morphisms() && !found; ++l) {
            auto const  g       = morphism_id(l);
            auto const& members = _e.morphism(g).members;
            if (std::ranges::none_of(members, [&](MorphismId m) { return _b.is_identity(m); })) {
              continue;
            }
            for (auto v : _c.hom(_c.dom(f), _c.dom(g))) {
              if (!is_isomorphism(_c, v)) {
                continue;
              }
              for (auto u : _c.hom(_c.cod(f), _c.cod(g))) {
                if (is_isomorphism(_c, u) && _c.compose(g, v) == _c.compose(u, f)) {
                  found = true;
                  break;
                }
              }
              if (found) {
                break;
              }
            }
          }
          if (!found) {
            _r.fail("so " + _c.morphism_name(f) + " is not isomorphic to an identity class",
                    nlohmann::json::object());
          }
        }
      }

      ExCompletion const&   _e;
      FinPosCategory const& _b;
      FinPosCategory const& _c;
      Report                _r;
      std::size_t           _count = 0;
    };

  }  // namespace

  Report internal_construction_crosscheck(ExCompletion const& e, Construction kind) {
    return Crosscheck(e).run(kind);
  }

}  // namespace poscat
