#include "poscat/limits.hpp"

#include <algorithm>

namespace poscat {

  namespace {

    class Solver {
     public:
      Solver(FinPosCategory const& c, DiagramSpec const& spec) : _c(c), _spec(spec) {
        validate_spec(c, spec);
        for (auto a : c.objects()) {
          _at.push_back(cones_at(c, spec, a));
          _total += _at.back().size();
        }
      }

      std::size_t total() const noexcept {
        return _total;
      }
      ConeSet const& at(ObjectId a) const {
        return _at[index(a)];
      }

      std::optional<Refutation>
      test(Cone const& l, LimitKind kind, std::vector<Factoring>* witnesses) const {
        auto const arity = _spec.vertices.size();
        for (auto a : _c.objects()) {
          auto const& set  = _at[index(a)];
          auto const  homs = _c.hom(a, l.apex);
          std::vector<char>       marked(set.size(), 0);
          std::vector<MorphismId> images(homs.size() * arity);
          for (std::size_t k = 0; k < homs.size(); ++k) {
            for (std::size_t v = 0; v < arity; ++v) {
              images[k * arity + v] = _c.compose(l.legs[v], homs[k]);
            }
            auto const idx =
                set.find(std::span<MorphismId const>(images.data() + k * arity, arity));
            if (!idx) {
              return Refutation{l, std::nullopt, "candidate legs do not form a cone"};
            }
            if (marked[*idx] && kind == LimitKind::strict) {
              auto const row = set[*idx];
              return Refutation{l,
                                Cone{a, {row.begin(), row.end()}},
                                "factorization of this cone is not unique"};
            }
            if (witnesses && !marked[*idx]) {
              witnesses->push_back({a, *idx, homs[k]});
            }
            marked[*idx] = 1;
          }
          for (std::size_t i = 0; i < set.size(); ++i) {
            if (!marked[i]) {
              auto const row = set[i];
              return Refutation{l, Cone{a, {row.begin(), row.end()}}, "cone does not factor"};
            }
          }
          if (kind == LimitKind::strict) {
            for (std::size_t x = 0; x < homs.size(); ++x) {
              for (std::size_t y = 0; y < homs.size(); ++y) {
                if (x == y || _c.leq(homs[x], homs[y])) {
                  continue;
                }
                bool all = true;
                for (std::size_t v = 0; v < arity && all; ++v) {
                  all = _c.leq(images[x * arity + v], images[y * arity + v]);
                }
                if (all) {
                  return Refutation{l,
                                    std::nullopt,
                                    "legs are not jointly order-reflecting at "
                                        + _c.morphism_name(homs[x]) + ", "
                                        + _c.morphism_name(homs[y])};
                }
              }
            }
          }
        }
        return std::nullopt;
      }

      // Cheap necessary condition for strictness.
      bool sizes_match(ObjectId apex) const {
        for (auto a : _c.objects()) {
          if (_c.hom(a, apex).size() != _at[index(a)].size()) {
            return false;
          }
        }
        return true;
      }

      LimitOutcome search(LimitKind kind, SearchOptions const& options, bool all,
                          std::vector<Cone>* found) const {
        LimitOutcome out;
        for (auto p : _c.objects()) {
          auto const& set = _at[index(p)];
          bool const  fit = kind == LimitKind::weak || sizes_match(p);
          for (std::size_t i = 0; i < set.size(); ++i) {
            auto const row = set[i];
            Cone       l{p, {row.begin(), row.end()}};
            if (!fit) {
              if (!all) {
                out.refutations.push_back(test(l, LimitKind::strict, nullptr).value_or(
                    Refutation{l, std::nullopt, "hom sizes differ from cone counts"}));
              }
              continue;
            }
            std::vector<Factoring> witnesses;
            auto refutation = test(l, kind, options.record_witnesses ? &witnesses : nullptr);
            if (!refutation) {
              if (all) {
                found->push_back(std::move(l));
                continue;
              }
              out.limit = LimitResult{kind, std::move(l), _total, std::move(witnesses)};
              out.refutations.clear();
              return out;
            }
            if (!all) {
              out.refutations.push_back(std::move(*refutation));
            }
          }
        }
        return out;
      }

     private:
      FinPosCategory const& _c;
      DiagramSpec const&    _spec;
      std::vector<ConeSet>  _at;
      std::size_t           _total = 0;
    };

  }  // namespace

  LimitOutcome search_weak_limit(FinPosCategory const& c,
                                 DiagramSpec const&    spec,
                                 SearchOptions const&  options) {
    return Solver(c, spec).search(LimitKind::weak, options, false, nullptr);
  }

  LimitOutcome search_strict_limit(FinPosCategory const& c,
                                   DiagramSpec const&    spec,
                                   SearchOptions const&  options) {
    return Solver(c, spec).search(LimitKind::strict, options, false, nullptr);
  }

  std::vector<Cone> all_weak_limits(FinPosCategory const& c, DiagramSpec const& spec) {
    std::vector<Cone> out;
    Solver(c, spec).search(LimitKind::weak, {}, true, &out);
    return out;
  }

  std::vector<Cone> all_strict_limits(FinPosCategory const& c, DiagramSpec const& spec) {
    std::vector<Cone> out;
    Solver(c, spec).search(LimitKind::strict, {}, true, &out);
    return out;
  }

  bool is_weak_limit(FinPosCategory const& c, DiagramSpec const& spec, Cone const& cone) {
    return is_cone(c, spec, cone) && !Solver(c, spec).test(cone, LimitKind::weak, nullptr);
  }

  bool is_strict_limit(FinPosCategory const& c, DiagramSpec const& spec, Cone const& cone) {
    return is_cone(c, spec, cone) && !Solver(c, spec).test(cone, LimitKind::strict, nullptr);
  }

  std::optional<MorphismId>
  factor_through(FinPosCategory const& c, Cone const& a, Cone const& b) {
    for (auto h : c.hom(a.apex, b.apex)) {
      if (precompose(c, b, h).legs == a.legs) {
        return h;
      }
    }
    return std::nullopt;
  }

  std::optional<MorphismId>
  cone_isomorphism(FinPosCategory const& c, Cone const& a, Cone const& b) {
    for (auto h : c.hom(a.apex, b.apex)) {
      if (is_isomorphism(c, h) && precompose(c, b, h).legs == a.legs) {
        return h;
      }
    }
    return std::nullopt;
  }

  LimitOutcome weak_terminal(FinPosCategory const& c) {
    return search_weak_limit(c, specs::terminal());
  }
  LimitOutcome weak_product(FinPosCategory const& c, ObjectId x, ObjectId y) {
    return search_weak_limit(c, specs::product(x, y));
  }
  LimitOutcome weak_inserter(FinPosCategory const& c, MorphismId f, MorphismId g) {
    return search_weak_limit(c, specs::inserter(c, f, g));
  }
  LimitOutcome weak_comma(FinPosCategory const& c, MorphismId f, MorphismId g) {
    return search_weak_limit(c, specs::comma(c, f, g));
  }
  LimitOutcome weak_pullback(FinPosCategory const& c, MorphismId f, MorphismId g) {
    return search_weak_limit(c, specs::pullback(c, f, g));
  }

  LimitOutcome strict_terminal(FinPosCategory const& c) {
    return search_strict_limit(c, specs::terminal());
  }
  LimitOutcome strict_product(FinPosCategory const& c, ObjectId x, ObjectId y) {
    return search_strict_limit(c, specs::product(x, y));
  }
  LimitOutcome strict_inserter(FinPosCategory const& c, MorphismId f, MorphismId g) {
    return search_strict_limit(c, specs::inserter(c, f, g));
  }
  LimitOutcome strict_comma(FinPosCategory const& c, MorphismId f, MorphismId g) {
    return search_strict_limit(c, specs::comma(c, f, g));
  }
  LimitOutcome strict_pullback(FinPosCategory const& c, MorphismId f, MorphismId g) {
    return search_strict_limit(c, specs::pullback(c, f, g));
  }

  namespace {

    // Empty when q is a coinserter; otherwise the reason.
    std::optional<std::string>
    coinserter_failure(FinPosCategory const&                           c,
                       MorphismId                                      f,
                       MorphismId                                      g,
                       MorphismId                                      q,
                       std::vector<std::pair<MorphismId, MorphismId>>* mediators) {
      auto const y  = c.cod(f);
      auto const qo = c.cod(q);
      if (c.dom(q) != y || !c.leq(c.compose(q, f), c.compose(q, g))) {
        return "q∘f <= q∘g fails";
      }
      for (auto z : c.objects()) {
        auto const from_q = c.hom(qo, z);
        for (auto h : c.hom(y, z)) {
          if (!c.leq(c.compose(h, f), c.compose(h, g))) {
            continue;
          }
          std::optional<MorphismId> mediator;
          for (auto u : from_q) {
            if (c.compose(u, q) == h) {
              if (mediator) {
                return "two mediators for " + c.morphism_name(h);
              }
              mediator = u;
            }
          }
          if (!mediator) {
            return "no mediator for " + c.morphism_name(h);
          }
          if (mediators) {
            mediators->emplace_back(h, *mediator);
          }
        }
        for (auto u : from_q) {
          for (auto v : from_q) {
            if (u != v && !c.leq(u, v) && c.leq(c.compose(u, q), c.compose(v, q))) {
              return "not order-reflecting at " + c.morphism_name(u) + ", "
                     + c.morphism_name(v);
            }
          }
        }
      }
      return std::nullopt;
    }

    void require_parallel(FinPosCategory const& c, MorphismId f, MorphismId g) {
      if (!c.parallel(f, g)) {
        throw NotParallel(c.morphism_name(f) + " and " + c.morphism_name(g)
                          + " are not parallel");
      }
    }

  }  // namespace

  CoinserterOutcome search_coinserter(FinPosCategory const& c,
                                      MorphismId            f,
                                      MorphismId            g,
                                      SearchOptions const&  options) {
    require_parallel(c, f, g);
    CoinserterOutcome out;
    for (auto q : c.outgoing(c.cod(f))) {
      std::vector<std::pair<MorphismId, MorphismId>> mediators;
      auto failure = coinserter_failure(c, f, g, q, options.record_witnesses ? &mediators : nullptr);
      if (!failure) {
        out.coinserter = CoinserterResult{f, g, q, std::move(mediators)};
        out.refutations.clear();
        return out;
      }
      out.refutations.emplace_back(q, std::move(*failure));
    }
    return out;
  }

  bool is_coinserter(FinPosCategory const& c, MorphismId f, MorphismId g, MorphismId q) {
    require_parallel(c, f, g);
    return !coinserter_failure(c, f, g, q, nullptr);
  }

  std::vector<MorphismId> all_coinserters(FinPosCategory const& c, MorphismId f, MorphismId g) {
    require_parallel(c, f, g);
    std::vector<MorphismId> out;
    for (auto q : c.outgoing(c.cod(f))) {
      if (!coinserter_failure(c, f, g, q, nullptr)) {
        out.push_back(q);
      }
    }
    return out;
  }

  nlohmann::json refutations_json(FinPosCategory const& c, std::vector<Refutation> const& r) {
    auto out = nlohmann::json::array();
    for (auto const& x : r) {
      nlohmann::json j{{"candidate", cone_json(c, x.candidate)}, {"reason", x.reason}};
      if (x.uncovered) {
        j["uncovered"] = cone_json(c, *x.uncovered);
      }
      out.push_back(std::move(j));
    }
    return out;
  }

  Report check_weakly_lex(FinPosCategory const& c) {
    Report r;
    r.command = "weakly-lex";
    auto const objs = c.objects();

    if (auto t = weak_terminal(c)) {
      r.pass("weak terminal", cone_json(c, t->cone));
    } else {
      r.fail("weak terminal", {{"refutations", refutations_json(c, t.refutations)}});
    }

    std::size_t products = 0;
    for (auto x : objs) {
      for (auto y : objs) {
        if (index(y) < index(x)) {
          continue;
        }
        if (auto p = weak_product(c, x, y); !p) {
          r.fail("weak product " + c.object_name(x) + " x " + c.object_name(y),
                 {{"objects", {c.object_name(x), c.object_name(y)}},
                  {"refutations", refutations_json(c, p.refutations)}});
        } else {
          ++products;
        }
      }
    }
    r.pass("weak binary products found", products);

    std::size_t inserters = 0;
    for (std::size_t fi = 0; fi < c.number_of_morphisms(); ++fi) {
      auto const f = morphism_id(fi);
      for (auto g : c.hom(c.dom(f), c.cod(f))) {
        if (g == f) {
          continue;
        }
        if (auto e = weak_inserter(c, f, g); !e) {
          r.fail("weak inserter " + c.morphism_name(f) + " <= " + c.morphism_name(g),
                 {{"pair", {c.morphism_name(f), c.morphism_name(g)}},
                  {"refutations", refutations_json(c, e.refutations)}});
        } else {
          ++inserters;
        }
      }
    }
    r.pass("weak inserters found", inserters);

    std::size_t commas = 0;
    for (auto x : objs) {
      auto const id = c.identity(x);
      if (auto k = weak_comma(c, id, id); !k) {
        r.fail("weak comma " + c.morphism_name(id) + " / " + c.morphism_name(id),
               {{"object", c.object_name(x)},
                {"refutations", refutations_json(c, k.refutations)}});
      } else {
        ++commas;
      }
    }
    r.pass("weak identity commas found", commas);
    return r;
  }

}  // namespace poscat
