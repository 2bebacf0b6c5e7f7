#include "coreecs/fuzz.hpp"

#include <algorithm>
#include <sstream>

namespace coreecs {

namespace {

const ComponentLabel kPos{"Pos"};
const ComponentLabel kVel{"Vel"};
const ComponentLabel kInt{"Int"};
const ComponentLabel kMark{"Mark"};

Mutation attach_int(const ComponentLabel& label, EntityId e, std::int64_t v) {
    return Mutation::attach(e, ComponentValue::integer(label, v));
}

std::string param_name(const std::string& base, std::int64_t p) {
    return base + "[" + std::to_string(p) + "]";
}

}  // namespace

std::vector<SystemTemplate> fuzz_catalogue() {
    std::vector<SystemTemplate> catalogue;

    catalogue.push_back(SystemTemplate{
        "inertia", {kPos, kVel}, {kPos}, [](const TemplateParams&) { return inertia_system(); }});

    catalogue.push_back(SystemTemplate{"collide",
                                       {kPos, kVel},
                                       {kPos, kVel},
                                       [](const TemplateParams&) { return collision_system(); }});

    catalogue.push_back(SystemTemplate{"increment", {kInt}, {kInt}, [](const TemplateParams& p) {
                                           return adjust_system(p.threshold, true);
                                       }});
    catalogue.push_back(SystemTemplate{"decrement", {kInt}, {kInt}, [](const TemplateParams& p) {
                                           return adjust_system(p.threshold, false);
                                       }});

    catalogue.push_back(SystemTemplate{
        "set_pos", {kPos}, {kPos}, [](const TemplateParams& p) {
            return make_system(param_name("set_pos", p.constant), QueryVector{Query::incl(kPos)},
                               [k = p.constant](const EntityMatch& match) {
                                   return attach_int(kPos, match.entities[0], k);
                               });
        }});

    catalogue.push_back(SystemTemplate{
        "give_pos", {kPos}, {kPos}, [](const TemplateParams& p) {
            return make_system(param_name("give_pos", p.constant), QueryVector{Query::excl(kPos)},
                               [k = p.constant](const EntityMatch& match) {
                                   return attach_int(kPos, match.entities[0], k);
                               });
        }});

    catalogue.push_back(SystemTemplate{
        "spawn_pos", {kPos}, {kPos}, [](const TemplateParams& p) {
            return make_system(param_name("spawn_pos", p.constant),
                               QueryVector{Query::anyway(kPos)},
                               [k = p.constant](const EntityMatch&) {
                                   return Mutation::fresh([k](EntityId spawned) {
                                       return attach_int(kPos, spawned, k);
                                   });
                               });
        }});

    catalogue.push_back(SystemTemplate{
        "drop_pos", {kPos}, {kPos}, [](const TemplateParams&) {
            return make_system("drop_pos", QueryVector{Query::incl(kPos)},
                               [](const EntityMatch& match) {
                                   return Mutation::detach(kPos, match.entities[0]);
                               });
        }});

    catalogue.push_back(SystemTemplate{
        "set_vel", {kPos, kVel}, {kVel}, [](const TemplateParams& p) {
            return make_system(param_name("set_vel", p.constant), QueryVector{Query::anyway(kPos)},
                               [k = p.constant](const EntityMatch& match) {
                                   return attach_int(kVel, match.entities[0], k);
                               });
        }});

    catalogue.push_back(SystemTemplate{
        "spawn_vel", {kPos, kVel}, {kVel}, [](const TemplateParams& p) {
            return make_system(param_name("spawn_vel", p.constant),
                               QueryVector{Query::anyway(kPos)},
                               [k = p.constant](const EntityMatch&) {
                                   return Mutation::fresh([k](EntityId spawned) {
                                       return attach_int(kVel, spawned, k);
                                   });
                               });
        }});

    catalogue.push_back(SystemTemplate{
        "drop_vel", {kPos, kVel}, {kVel}, [](const TemplateParams&) {
            return make_system("drop_vel", QueryVector{Query::anyway(kPos)},
                               [](const EntityMatch& match) {
                                   return Mutation::detach(kVel, match.entities[0]);
                               });
        }});

    catalogue.push_back(SystemTemplate{
        "mark", {kPos, kMark}, {kMark}, [](const TemplateParams&) {
            return make_system("mark", QueryVector{Query::incl(kPos)},
                               [](const EntityMatch& match) {
                                   return Mutation::attach(
                                       match.entities[0], ComponentValue::flag(kMark));
                               });
        }});

    return catalogue;
}

std::string to_string(InstanceClass c) {
    switch (c) {
        case InstanceClass::SafeDeterministic: return "safe-deterministic";
        case InstanceClass::SafeNondeterministic: return "safe-NONDETERMINISTIC";
        case InstanceClass::UnknownDeterministic: return "unknown-deterministic";
        case InstanceClass::UnknownNondeterministic: return "unknown-nondeterministic";
        case InstanceClass::Skipped: return "skipped";
    }
    return "?";
}

namespace {

struct InstanceRng {
    std::mt19937_64 rng;

    explicit InstanceRng(std::uint64_t seed, std::uint64_t index)
        : rng(seed ^ (0x9e3779b97f4a7c15ull * (index + 1))) {}

    std::int64_t range(std::int64_t lo, std::int64_t hi) {
        return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
    }
};

Schema pick_schema(InstanceRng& r) {
    switch (r.range(0, 2)) {
        case 0: return Schema{{kPos, ComponentKind::Integer}, {kVel, ComponentKind::Integer}};
        case 1: return Schema{{kInt, ComponentKind::Integer}};
        default:
            return Schema{{kPos, ComponentKind::Integer},
                          {kVel, ComponentKind::Integer},
                          {kMark, ComponentKind::Flag}};
    }
}

WorldState random_start(InstanceRng& r, const Schema& schema) {
    WorldState state = WorldState::empty(schema);
    std::int64_t entities = r.range(0, 6);
    for (std::int64_t i = 0; i < entities; ++i) {
        auto [e, next] = state.fresh_entity();
        state = next;
        bool attached_any = false;
        for (std::size_t s = 0; s < schema.size(); ++s) {
            bool last_chance = !attached_any && s + 1 == schema.size();
            if (!last_chance && r.range(0, 2) == 0) continue;
            attached_any = true;
            switch (schema.kind_at(s)) {
                case ComponentKind::Integer:
                    state = state.with_attached(
                        e, ComponentValue::integer(schema.label_at(s), r.range(-3, 8)));
                    break;
                case ComponentKind::Flag:
                    state = state.with_attached(e, ComponentValue::flag(schema.label_at(s)));
                    break;
                case ComponentKind::EntityRef:
                    state = state.with_attached(
                        e, ComponentValue::entity_ref(schema.label_at(s), e));
                    break;
            }
        }
    }
    return state;
}

SystemPtr pick_system(InstanceRng& r, const Schema& schema,
                      const std::vector<SystemTemplate>& catalogue, DeclaredLabels& declared) {
    std::vector<const SystemTemplate*> usable;
    for (const SystemTemplate& tpl : catalogue) {
        bool fits = std::all_of(tpl.required_labels.begin(), tpl.required_labels.end(),
                                [&](const ComponentLabel& l) { return schema.contains(l); });
        if (fits) usable.push_back(&tpl);
    }
    const SystemTemplate& tpl = *usable[static_cast<std::size_t>(r.range(0, usable.size() - 1))];
    TemplateParams params;
    params.constant = r.range(-2, 6);
    params.threshold = r.range(0, 8);
    SystemPtr system = tpl.instantiate(params);
    declared[system->name] = tpl.declared_labels;
    return system;
}

Schedule pick_leaf(InstanceRng& r, const Schema& schema,
                   const std::vector<SystemTemplate>& catalogue, DeclaredLabels& declared) {
    SystemPtr system = pick_system(r, schema, catalogue, declared);
    return r.range(0, 1) == 0 ? Schedule::conc(std::move(system))
                              : Schedule::seq(std::move(system));
}

}  // namespace

FuzzInstance generate_instance(std::uint64_t seed, std::uint64_t index) {
    InstanceRng r(seed, index);
    auto catalogue = fuzz_catalogue();

    FuzzInstance instance{pick_schema(r), WorldState(), Schedule::conc(inertia_system()), {}, ""};
    instance.start = random_start(r, instance.schema);

    // A leaf or one combinator over two leaves; worlds stay enumerable.
    if (r.range(0, 2) == 0) {
        instance.schedule = pick_leaf(r, instance.schema, catalogue, instance.declared_labels);
    } else {
        Schedule left = pick_leaf(r, instance.schema, catalogue, instance.declared_labels);
        Schedule right = pick_leaf(r, instance.schema, catalogue, instance.declared_labels);
        instance.schedule = r.range(0, 1) == 0
                                ? Schedule::par(std::move(left), std::move(right))
                                : Schedule::seq_comp(std::move(left), std::move(right));
    }

    std::ostringstream desc;
    desc << "instance " << index << ": " << instance.schedule.render() << " at "
         << render_state(instance.start);
    instance.description = desc.str();
    return instance;
}

InstanceOutcome evaluate_instance(const FuzzInstance& instance, std::uint64_t max_invocations) {
    InstanceOutcome outcome;
    outcome.safety = check_safe(instance.start, instance.schedule);

    // Declared labels must cover everything the schedule actually influences.
    std::set<ComponentLabel> allowed =
        declared_label_set(instance.schedule, instance.declared_labels);
    Influence observed = schedule_influence(instance.start, instance.schedule);
    for (const auto& [e, label] : observed.cells()) {
        if (!allowed.count(label)) {
            outcome.violations.push_back("influence on undeclared label '" + label.name + "'");
        }
    }

    InvocationPO po = invocation_po(instance.start, instance.schedule);
    bool enumerable = po.size() <= max_invocations;
    if (enumerable) {
        try {
            outcome.determinism = brute_force_determinism(instance.start, instance.schedule);
        } catch (const TooManyLinearizations&) {
            enumerable = false;
        }
    }

    if (!enumerable) {
        outcome.classification = InstanceClass::Skipped;
    } else if (outcome.safety.verdict == SafetyVerdict::Safe) {
        outcome.classification = outcome.determinism.deterministic
                                     ? InstanceClass::SafeDeterministic
                                     : InstanceClass::SafeNondeterministic;
    } else {
        outcome.classification = outcome.determinism.deterministic
                                     ? InstanceClass::UnknownDeterministic
                                     : InstanceClass::UnknownNondeterministic;
    }

    if (outcome.safety.verdict == SafetyVerdict::Safe) {
        WorldState reference = apply_schedule(instance.start, instance.schedule);
        for (std::uint64_t seed = 0; seed < 3; ++seed) {
            RunConfig cfg;
            cfg.workers = seed == 0 ? 1 : (seed == 1 ? 2 : 4);
            cfg.seed = seed;
            WorldState parallel = run_parallel(instance.start, instance.schedule, cfg).state;
            if (!states_equal_upto_fresh(reference, parallel)) {
                outcome.violations.push_back("parallel run diverged from the reference (seed " +
                                             std::to_string(seed) + ")");
            }
        }
    }
    return outcome;
}

std::string FuzzSummary::render() const {
    std::ostringstream out;
    out << "instances: " << instances << "\n"
        << "  safe-deterministic:       " << safe_deterministic << "\n"
        << "  unknown-deterministic:    " << unknown_deterministic << "\n"
        << "  unknown-nondeterministic: " << unknown_nondeterministic << "\n"
        << "  skipped:                  " << skipped << "\n";
    for (const std::string& failure : failures) {
        out << "FAILURE: " << failure << "\n";
    }
    return out.str();
}

FuzzSummary fuzz(std::uint64_t instances, std::uint64_t max_invocations, std::uint64_t seed) {
    FuzzSummary summary;
    summary.instances = instances;
    for (std::uint64_t i = 0; i < instances; ++i) {
        FuzzInstance instance = generate_instance(seed, i);
        InstanceOutcome outcome = evaluate_instance(instance, max_invocations);
        switch (outcome.classification) {
            case InstanceClass::SafeDeterministic: ++summary.safe_deterministic; break;
            case InstanceClass::SafeNondeterministic:
                summary.failures.push_back("safe but non-deterministic: " + instance.description);
                break;
            case InstanceClass::UnknownDeterministic: ++summary.unknown_deterministic; break;
            case InstanceClass::UnknownNondeterministic: ++summary.unknown_nondeterministic; break;
            case InstanceClass::Skipped: ++summary.skipped; break;
        }
        for (const std::string& violation : outcome.violations) {
            summary.failures.push_back(violation + " in " + instance.description);
        }
    }
    return summary;
}

}  // namespace coreecs
