#include "erg/oracle.hpp"

#include <ostream>
#include <string>

namespace erg {

QuerySession::QuerySession(const PartiallyErasedGraph& g, std::uint64_t seed)
    : graph_(&g), seed_(seed), rng_(seed) {}

void QuerySession::charge(BudgetScope kind) {
    if (budget_ && (budget_->scope == BudgetScope::Total || budget_->scope == kind)) {
        const auto used = budget_->scope == BudgetScope::Total    ? counts_.total()
                          : budget_->scope == BudgetScope::Degree ? counts_.degree
                                                                  : counts_.neighbor;
        if (used >= budget_->cap) {
            throw BudgetExhausted("query budget of " + std::to_string(budget_->cap) + " exhausted");
        }
    }
    if (kind == BudgetScope::Degree) {
        ++counts_.degree;
    } else {
        ++counts_.neighbor;
    }
}

std::size_t QuerySession::q_degree(Vertex u) {
    const auto d = graph_->degree(u);  // range check precedes the charge
    charge(BudgetScope::Degree);
    degree_known_.insert(u);
    if (trace_) {
        *trace_ << "D " << u << '\n';
    }
    return d;
}

AdjEntry QuerySession::q_neighbor(Vertex u, std::size_t i) {
    const auto e = graph_->neighbor(u, i);
    charge(BudgetScope::Neighbor);
    if (trace_) {
        *trace_ << "N " << u << ' ' << i << " -> ";
        if (e.is_erased()) {
            *trace_ << '*';
        } else {
            *trace_ << e.id();
        }
        *trace_ << '\n';
    }
    return e;
}

std::optional<AdjEntry> QuerySession::q_random_neighbor(Vertex u) {
    std::size_t d = 0;
    if (degree_known_.contains(u)) {
        d = graph_->degree(u);
    } else {
        d = q_degree(u);
    }
    if (d == 0) {
        return std::nullopt;
    }
    const auto i = 1 + rng_.below(d);
    return q_neighbor(u, i);
}

Vertex QuerySession::sample_vertex() {
    return static_cast<Vertex>(rng_.below(graph_->num_vertices()));
}

FilterOracle::FilterOracle(QuerySession& session, std::size_t degree_bound)
    : session_(&session), bound_(degree_bound) {}

const std::vector<Vertex>& FilterOracle::list(Vertex u) {
    if (auto it = cache_.find(u); it != cache_.end()) {
        return it->second;
    }
    const auto before = session_->counts();
    const auto du = session_->q_degree(u);
    if (du > bound_) {
        throw InputError("vertex " + std::to_string(u) + " has degree " + std::to_string(du) +
                         " above the bound " + std::to_string(bound_));
    }
    std::vector<Vertex> kept;
    for (std::size_t i = 1; i <= du; ++i) {
        const auto e = session_->q_neighbor(u, i);
        if (e.is_erased()) {
            continue;
        }
        const Vertex w = e.id();
        const auto dw = session_->q_degree(w);
        if (dw > bound_) {
            throw InputError("vertex " + std::to_string(w) + " has degree " + std::to_string(dw) +
                             " above the bound " + std::to_string(bound_));
        }
        for (std::size_t j = 1; j <= dw; ++j) {
            if (session_->q_neighbor(w, j) == AdjEntry::vertex(u)) {
                kept.push_back(w);
                break;
            }
        }
    }
    const auto after = session_->counts();
    misses_.push_back({u, {after.degree - before.degree, after.neighbor - before.neighbor}});
    return cache_.emplace(u, std::move(kept)).first->second;
}

std::size_t FilterOracle::degree(Vertex u) { return list(u).size(); }

std::optional<Vertex> FilterOracle::neighbor(Vertex u, std::size_t i) {
    if (i < 1 || i > bound_) {
        throw InputError("filter neighbor index " + std::to_string(i) + " out of range [1, " +
                         std::to_string(bound_) + "]");
    }
    const auto& l = list(u);
    if (i > l.size()) {
        return std::nullopt;
    }
    return l[i - 1];
}

}  // namespace erg
