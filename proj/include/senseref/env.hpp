#ifndef SENSEREF_ENV_HPP
#define SENSEREF_ENV_HPP

#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "senseref/errors.hpp"
#include "senseref/term.hpp"

namespace senseref {

// Ordered map of definitional stipulations (name := term). A body may refer
// only to names defined earlier, which makes the reference graph acyclic by
// construction; fully unfolded bodies are precomputed at insertion time so
// unfolding never recurses at use sites.
class env {
  public:
    void define(const std::string& name, const term_ptr& body) {
        if (index_.count(name)) throw env_error("duplicate definition '" + name + "'");
        auto fv = free_vars(body);
        if (!fv.empty())
            throw env_error("definition body for '" + name + "' has free variable '" + *fv.begin() +
                            "'");
        term_ptr expanded = unfold(body);  // throws unknown_definition on forward/missing refs
        index_.emplace(name, defs_.size());
        defs_.push_back({name, body, expanded});
    }

    bool contains(const std::string& name) const { return index_.count(name) != 0; }

    const term_ptr* find(const std::string& name) const {
        auto it = index_.find(name);
        return it == index_.end() ? nullptr : &defs_[it->second].body;
    }

    const term_ptr* find_unfolded(const std::string& name) const {
        auto it = index_.find(name);
        return it == index_.end() ? nullptr : &defs_[it->second].unfolded;
    }

    // Replaces every DefRef in t by the referent's fully unfolded body.
    term_ptr unfold(const term_ptr& t) const {
        if (!has_defref(t)) return t;
        switch (t->kind) {
            case term_kind::defref: {
                const term_ptr* u = find_unfolded(t->name);
                if (!u) throw unknown_definition(t->name);
                return *u;
            }
            case term_kind::pi:
                return pi(t->name, unfold(t->a), unfold(t->b));
            case term_kind::lam:
                return lam(t->name, unfold(t->a));
            case term_kind::app:
                return app(unfold(t->a), unfold(t->b));
            case term_kind::eq:
                return eq(unfold(t->a), unfold(t->b), unfold(t->c));
            case term_kind::refl:
                return refl(unfold(t->a));
            case term_kind::eqrec:
                return eqrec(unfold(t->a), unfold(t->b));
            case term_kind::succ:
                return succ(unfold(t->a));
            case term_kind::natrec:
                return natrec(unfold(t->a), unfold(t->b), unfold(t->c));
            default:
                return t;
        }
    }

    struct definition {
        std::string name;
        term_ptr body;
        term_ptr unfolded;
    };

    const std::vector<definition>& definitions() const { return defs_; }
    std::size_t size() const { return defs_.size(); }
    bool empty() const { return defs_.empty(); }

  private:
    std::vector<definition> defs_;
    std::unordered_map<std::string, std::size_t> index_;
};

inline term_ptr unfold(const term_ptr& t, const env& e) { return e.unfold(t); }

}  // namespace senseref

#endif
