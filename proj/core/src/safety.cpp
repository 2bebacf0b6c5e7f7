#include "coreecs/safety.hpp"

#include <map>
#include <sstream>

namespace coreecs {

std::string to_string(SafetyVerdict v) {
    switch (v) {
        case SafetyVerdict::Safe: return "Safe";
        case SafetyVerdict::Unsafe: return "Unsafe";
        case SafetyVerdict::Unknown: return "Unknown";
    }
    return "?";
}

std::string to_string(SafetyRule r) {
    switch (r) {
        case SafetyRule::SeqAlwaysSafe: return "SeqAlwaysSafe";
        case SafetyRule::SeqCompOfSafe: return "SeqCompOfSafe";
        case SafetyRule::ConcPairwiseDisjoint: return "ConcPairwiseDisjoint";
        case SafetyRule::ParDisjointInfluence: return "ParDisjointInfluence";
        case SafetyRule::StaticSingletonQuery: return "StaticSingletonQuery";
        case SafetyRule::StaticDisjointLabels: return "StaticDisjointLabels";
    }
    return "?";
}

std::string SafetyReport::render() const {
    std::ostringstream out;
    for (const TraceEntry& entry : rule_trace) {
        out << entry.node << ": " << to_string(entry.rule) << " -> " << to_string(entry.verdict)
            << "\n";
    }
    for (const SafetyConflict& conflict : conflicts) {
        for (const auto& [e, label] : conflict.overlap.cells()) {
            out << "(" << to_string(e) << ", " << label.name << ") touched by "
                << conflict.a.system->name << "#" << conflict.a.tag << " and "
                << conflict.b.system->name << "#" << conflict.b.tag << "\n";
        }
    }
    return out.str();
}

Influence schedule_influence(const WorldState& c, const Schedule& z) {
    return std::visit(
        [&](const auto& node) -> Influence {
            using T = std::decay_t<decltype(node)>;
            Influence total;
            if constexpr (std::is_same_v<T, Schedule::ConcNode>) {
                for (const EntityMatch& match : eval_query_vector(c, node.system->query)) {
                    total.merge(mutation_influence(node.system->func(match)));
                }
            } else if constexpr (std::is_same_v<T, Schedule::SeqNode>) {
                auto matches = eval_query_vector(c, node.system->query);
                for (const EntityMatch& match : roll(*node.system, c, matches)) {
                    total.merge(mutation_influence(node.system->func(match)));
                }
            } else if constexpr (std::is_same_v<T, Schedule::ParNode>) {
                total.merge(schedule_influence(c, node.left));
                total.merge(schedule_influence(c, node.right));
            } else {
                total.merge(schedule_influence(c, node.left));
                total.merge(schedule_influence(apply_schedule(c, node.left), node.right));
            }
            return total;
        },
        z.node());
}

namespace {

struct SafetyChecker {
    SafetyReport report;

    SafetyVerdict check(const WorldState& c, const Schedule& z, const std::string& path) {
        return std::visit(
            [&](const auto& node) -> SafetyVerdict {
                using T = std::decay_t<decltype(node)>;
                if constexpr (std::is_same_v<T, Schedule::ConcNode>) {
                    return check_conc(c, node.system, path);
                } else if constexpr (std::is_same_v<T, Schedule::SeqNode>) {
                    // Only one order of invocations exists.
                    trace(path + "seq(" + node.system->name + ")", SafetyRule::SeqAlwaysSafe,
                          SafetyVerdict::Safe);
                    return SafetyVerdict::Safe;
                } else if constexpr (std::is_same_v<T, Schedule::ParNode>) {
                    return check_par(c, node, path);
                } else {
                    SafetyVerdict left = check(c, node.left, path + "seqcomp.l ");
                    SafetyVerdict right =
                        check(apply_schedule(c, node.left), node.right, path + "seqcomp.r ");
                    SafetyVerdict verdict = (left == SafetyVerdict::Safe &&
                                             right == SafetyVerdict::Safe)
                                                ? SafetyVerdict::Safe
                                                : SafetyVerdict::Unknown;
                    trace(path + "seqcomp", SafetyRule::SeqCompOfSafe, verdict);
                    return verdict;
                }
            },
            z.node());
    }

    SafetyVerdict check_conc(const WorldState& c, const SystemPtr& system,
                             const std::string& path) {
        std::vector<Invocation> invocations;
        std::vector<Influence> influences;
        for (const EntityMatch& match : eval_query_vector(c, system->query)) {
            invocations.push_back(Invocation{system, match, invocations.size()});
            influences.push_back(mutation_influence(system->func(match)));
        }
        bool disjoint = true;
        for (std::size_t i = 0; i < influences.size(); ++i) {
            for (std::size_t j = i + 1; j < influences.size(); ++j) {
                Influence overlap = influences[i].intersect(influences[j]);
                if (!overlap.empty()) {
                    disjoint = false;
                    report.conflicts.push_back(
                        SafetyConflict{invocations[i], invocations[j], std::move(overlap)});
                }
            }
        }
        SafetyVerdict verdict = disjoint ? SafetyVerdict::Safe : SafetyVerdict::Unknown;
        trace(path + "conc(" + system->name + ")", SafetyRule::ConcPairwiseDisjoint, verdict);
        return verdict;
    }

    SafetyVerdict check_par(const WorldState& c, const Schedule::ParNode& node,
                            const std::string& path) {
        SafetyVerdict left = check(c, node.left, path + "par.l ");
        SafetyVerdict right = check(c, node.right, path + "par.r ");
        Influence overlap =
            schedule_influence(c, node.left).intersect(schedule_influence(c, node.right));
        if (!overlap.empty()) {
            report_par_conflicts(c, node, overlap);
        }
        SafetyVerdict verdict = (left == SafetyVerdict::Safe && right == SafetyVerdict::Safe &&
                                 overlap.empty())
                                    ? SafetyVerdict::Safe
                                    : SafetyVerdict::Unknown;
        trace(path + "par", SafetyRule::ParDisjointInfluence, verdict);
        return verdict;
    }

    // Attribute the overlapping cells to concrete invocation pairs across
    // the two sides.
    void report_par_conflicts(const WorldState& c, const Schedule::ParNode& node,
                              const Influence& overlap) {
        InvocationPO left = invocation_po(c, node.left);
        InvocationPO right = invocation_po(c, node.right);
        for (const Invocation& a : left.elements()) {
            Influence ia = mutation_influence(a.system->func(a.match)).intersect(overlap);
            if (ia.empty()) continue;
            for (const Invocation& b : right.elements()) {
                Influence shared = ia.intersect(mutation_influence(b.system->func(b.match)));
                if (!shared.empty()) {
                    report.conflicts.push_back(SafetyConflict{a, b, std::move(shared)});
                }
            }
        }
    }

    void trace(std::string node, SafetyRule rule, SafetyVerdict verdict) {
        report.rule_trace.push_back(SafetyReport::TraceEntry{std::move(node), rule, verdict});
    }
};

}  // namespace

SafetyReport check_safe(const WorldState& c, const Schedule& z) {
    SafetyChecker checker;
    checker.report.verdict = checker.check(c, z, "");
    return checker.report;
}

bool check_static_singleton(const Schema& schema, const System& s) {
    if (s.query.dim() != 1) return false;
    for (const ComponentLabel& label : result_shape(schema, s.query.at(0)).value_labels()) {
        if (schema.kind_of(label) == ComponentKind::EntityRef) return false;
    }
    return true;
}

std::set<ComponentLabel> declared_label_set(const Schedule& z,
                                            const DeclaredLabels& declared_labels) {
    std::set<ComponentLabel> labels;
    for (const SystemPtr& system : z.systems()) {
        auto it = declared_labels.find(system->name);
        if (it == declared_labels.end()) {
            throw AnalysisError("no label declaration for system '" + system->name + "'");
        }
        labels.insert(it->second.begin(), it->second.end());
    }
    return labels;
}

bool statically_safe(const Schema& schema, const Schedule& z,
                     const DeclaredLabels& declared_labels) {
    return std::visit(
        [&](const auto& node) -> bool {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, Schedule::ConcNode>) {
                return check_static_singleton(schema, *node.system);
            } else if constexpr (std::is_same_v<T, Schedule::SeqNode>) {
                return true;
            } else if constexpr (std::is_same_v<T, Schedule::ParNode>) {
                return check_static_disjoint_labels(schema, node.left, node.right,
                                                    declared_labels);
            } else {
                return statically_safe(schema, node.left, declared_labels) &&
                       statically_safe(schema, node.right, declared_labels);
            }
        },
        z.node());
}

bool check_static_disjoint_labels(const Schema& schema, const Schedule& z, const Schedule& z2,
                                  const DeclaredLabels& declared_labels) {
    std::set<ComponentLabel> left = declared_label_set(z, declared_labels);
    std::set<ComponentLabel> right = declared_label_set(z2, declared_labels);
    if (!statically_safe(schema, z, declared_labels) ||
        !statically_safe(schema, z2, declared_labels)) {
        return false;
    }
    for (const ComponentLabel& label : left) {
        if (right.count(label)) return false;
    }
    return true;
}

DeterminismVerdict brute_force_determinism(const WorldState& c, const Schedule& z,
                                           std::uint64_t limit) {
    InvocationPO po = invocation_po(c, z);
    auto linearizations = enumerate_linearizations(po, limit);

    DeterminismVerdict verdict;
    std::map<std::string, DeterminismVerdict::Outcome> buckets;
    for (const auto& lin : linearizations) {
        WorldState final_state = apply_linearization(c, po, lin);
        std::string key = canonical_render(final_state);
        buckets.try_emplace(key, DeterminismVerdict::Outcome{lin, std::move(final_state)});
    }
    verdict.distinct_outcomes = buckets.size();
    verdict.deterministic = buckets.size() <= 1;
    if (buckets.size() > 1) {
        auto it = buckets.begin();
        const auto& first = it->second;
        const auto& second = (++it)->second;
        verdict.witness = std::make_pair(first, second);
    }
    return verdict;
}

}  // namespace coreecs
