#include "coreecs/scenario.hpp"

#include <utility>

namespace coreecs {

namespace {

const ComponentLabel kPos{"Pos"};
const ComponentLabel kVel{"Vel"};
const ComponentLabel kInt{"Int"};

Mutation attach_int(const ComponentLabel& label, EntityId e, std::int64_t v) {
    return Mutation::attach(e, ComponentValue::integer(label, v));
}

}  // namespace

WorldState Scenario::start_state() const {
    return apply_mutation(WorldState::empty(schema), initial);
}

SystemPtr inertia_system() {
    QueryVector query{Query::conj(Query::incl(kPos), Query::incl(kVel))};
    return make_system("inertia", std::move(query), [](const EntityMatch& match) {
        EntityId e = match.entities[0];
        std::int64_t p = match.results[0].first().as_value().as_integer();
        std::int64_t v = match.results[0].second().as_value().as_integer();
        return attach_int(kPos, e, p + v);
    });
}

SystemPtr collision_system() {
    QueryVector query{Query::conj(Query::incl(kPos), Query::incl(kVel)),
                      Query::conj(Query::incl(kPos), Query::excl(kVel))};
    return make_system("collide", std::move(query), [](const EntityMatch& match) {
        EntityId mover = match.entities[0];
        EntityId obstacle = match.entities[1];
        std::int64_t mover_pos = match.results[0].first().as_value().as_integer();
        std::int64_t mover_vel = match.results[0].second().as_value().as_integer();
        std::int64_t obstacle_pos = match.results[1].first().as_value().as_integer();
        if (mover_pos != obstacle_pos) return Mutation::nil();
        // The mover is destroyed; the obstacle departs with half the
        // velocity and a fresh entity takes the other half the opposite way.
        // Halving truncates toward zero.
        return Mutation::detach(kPos, mover) * Mutation::detach(kVel, mover) *
               attach_int(kVel, obstacle, mover_vel / 2) *
               Mutation::fresh([mover_pos, mover_vel](EntityId spawned) {
                   return attach_int(kPos, spawned, mover_pos) *
                          attach_int(kVel, spawned, mover_vel / -2);
               });
    });
}

Scenario toy_physics_scenario() {
    SystemPtr inertia = inertia_system();
    SystemPtr collide = collision_system();
    Scenario scenario{
        .name = "toy-phys",
        .schema = Schema{{kPos, ComponentKind::Integer}, {kVel, ComponentKind::Integer}},
        .initial =
            Mutation::fresh(
                [](EntityId e) { return attach_int(kPos, e, 1) * attach_int(kVel, e, 6); }) *
            Mutation::fresh([](EntityId e) { return attach_int(kPos, e, 7); }) *
            Mutation::fresh(
                [](EntityId e) { return attach_int(kPos, e, 9) * attach_int(kVel, e, -2); }),
        .schedule = Schedule::seq_comp(Schedule::conc(inertia), Schedule::seq(collide)),
        .frames = 2,
        .expected_output = std::nullopt,
        .declared_labels = {},
    };
    scenario.expected_output = std::vector<std::string>{
        "Pos↦{e0 ↦ Pos 1, e1 ↦ Pos 7, e2 ↦ Pos 9} :+ "
        "Vel↦{e0 ↦ Vel 6, e2 ↦ Vel (-2)} :+ Metadata {nextFresh = e3}",
        "Pos↦{e1 ↦ Pos 7, e2 ↦ Pos 7, e3 ↦ Pos 7} :+ "
        "Vel↦{e1 ↦ Vel 3, e2 ↦ Vel (-2), e3 ↦ Vel (-3)} :+ "
        "Metadata {nextFresh = e4}",
        "Pos↦{e1 ↦ Pos 10, e2 ↦ Pos 5, e3 ↦ Pos 4} :+ "
        "Vel↦{e1 ↦ Vel 3, e2 ↦ Vel (-2), e3 ↦ Vel (-3)} :+ "
        "Metadata {nextFresh = e4} END",
    };
    scenario.declared_labels = {{"inertia", {kPos}}, {"collide", {kPos, kVel}}};
    return scenario;
}

WorldState toy_physics_start() { return toy_physics_scenario().start_state(); }

WorldState toy_physics_converged() {
    WorldState start = toy_physics_start();
    return apply_mutation(start, concurrent_production(start, *inertia_system()));
}

SystemPtr adjust_system(std::int64_t bound, bool increment) {
    QueryVector query{Query::incl(kInt)};
    std::string name = increment ? "increment" : "decrement";
    return make_system(std::move(name), std::move(query),
                       [bound, increment](const EntityMatch& match) {
                           EntityId e = match.entities[0];
                           std::int64_t n = match.results[0].as_value().as_integer();
                           if (increment) {
                               return n < bound ? attach_int(kInt, e, n + 1) : Mutation::nil();
                           }
                           return n < bound ? Mutation::nil() : attach_int(kInt, e, n - 1);
                       });
}

Scenario disjoint_entities_scenario() {
    Scenario scenario{
        .name = "disjoint-entities",
        .schema = Schema{{kInt, ComponentKind::Integer}},
        .initial = Mutation::fresh([](EntityId e) { return attach_int(kInt, e, 3); }) *
                   Mutation::fresh([](EntityId e) { return attach_int(kInt, e, 8); }),
        .schedule = Schedule::par(Schedule::conc(adjust_system(4, true)),
                                  Schedule::conc(adjust_system(4, false))),
        .frames = 2,
        .expected_output =
            std::vector<std::string>{
                "Int↦{e0 ↦ 3, e1 ↦ 8} :+ Metadata {nextFresh = e2}",
                "Int↦{e0 ↦ 4, e1 ↦ 7} :+ Metadata {nextFresh = e2}",
                "Int↦{e0 ↦ 3, e1 ↦ 6} :+ Metadata {nextFresh = e2} END",
            },
        .declared_labels = {{"increment", {kInt}}, {"decrement", {kInt}}},
    };
    return scenario;
}

namespace {

Scenario category_scenario(std::string name, Mutation initial, SystemPtr system,
                           std::set<ComponentLabel> declared) {
    std::string system_name = system->name;
    Scenario scenario{
        .name = std::move(name),
        .schema = Schema{{kPos, ComponentKind::Integer}, {kVel, ComponentKind::Integer}},
        .initial = std::move(initial),
        .schedule = Schedule::conc(std::move(system)),
        .frames = 1,
        .expected_output = std::nullopt,
        .declared_labels = {},
    };
    scenario.declared_labels[system_name] = std::move(declared);
    return scenario;
}

Mutation entities_with_pos_and_vel() {
    return Mutation::fresh([](EntityId e) { return attach_int(kPos, e, 2) * attach_int(kVel, e, 5); }) *
           Mutation::fresh(
               [](EntityId e) { return attach_int(kPos, e, 4) * attach_int(kVel, e, -1); });
}

Mutation entities_with_pos_only() {
    return Mutation::fresh([](EntityId e) { return attach_int(kPos, e, 2); }) *
           Mutation::fresh([](EntityId e) { return attach_int(kPos, e, 4); });
}

Mutation entities_with_vel_only() {
    return Mutation::fresh([](EntityId e) { return attach_int(kVel, e, 5); }) *
           Mutation::fresh([](EntityId e) { return attach_int(kVel, e, -1); });
}

}  // namespace

std::vector<Scenario> mutation_category_suite() {
    std::vector<Scenario> suite;

    // Owned categories: the written store appears in the system's query.
    suite.push_back(category_scenario(
        "owned-update", entities_with_pos_only(),
        make_system("zero_pos", QueryVector{Query::incl(kPos)},
                    [](const EntityMatch& match) {
                        return attach_int(kPos, match.entities[0], 0);
                    }),
        {kPos}));

    suite.push_back(category_scenario(
        "owned-insert", entities_with_vel_only(),
        make_system("give_pos", QueryVector{Query::excl(kPos)},
                    [](const EntityMatch& match) {
                        return attach_int(kPos, match.entities[0], 0);
                    }),
        {kPos}));

    suite.push_back(category_scenario(
        "owned-initialize", entities_with_pos_only(),
        make_system("spawn_pos", QueryVector{Query::anyway(kPos)},
                    [](const EntityMatch&) {
                        return Mutation::fresh(
                            [](EntityId spawned) { return attach_int(kPos, spawned, 0); });
                    }),
        {kPos}));

    suite.push_back(category_scenario(
        "owned-delete", entities_with_pos_only(),
        make_system("drop_pos", QueryVector{Query::incl(kPos)},
                    [](const EntityMatch& match) {
                        return Mutation::detach(kPos, match.entities[0]);
                    }),
        {kPos}));

    // Deferred categories: the written store is not part of the query.
    suite.push_back(category_scenario(
        "deferred-update", entities_with_pos_and_vel(),
        make_system("set_vel", QueryVector{Query::anyway(kPos)},
                    [](const EntityMatch& match) {
                        return attach_int(kVel, match.entities[0], 1);
                    }),
        {kVel}));

    suite.push_back(category_scenario(
        "deferred-insert", entities_with_pos_only(),
        make_system("give_vel", QueryVector{Query::anyway(kPos)},
                    [](const EntityMatch& match) {
                        return attach_int(kVel, match.entities[0], 1);
                    }),
        {kVel}));

    suite.push_back(category_scenario(
        "deferred-initialize", entities_with_pos_only(),
        make_system("spawn_vel", QueryVector{Query::anyway(kPos)},
                    [](const EntityMatch&) {
                        return Mutation::fresh(
                            [](EntityId spawned) { return attach_int(kVel, spawned, 1); });
                    }),
        {kVel}));

    suite.push_back(category_scenario(
        "deferred-delete", entities_with_pos_and_vel(),
        make_system("drop_vel", QueryVector{Query::anyway(kPos)},
                    [](const EntityMatch& match) {
                        return Mutation::detach(kVel, match.entities[0]);
                    }),
        {kVel}));

    return suite;
}

std::vector<std::string> run_scenario_reference(const Scenario& scenario) {
    std::vector<std::string> lines;
    WorldState state = scenario.start_state();
    for (unsigned frame = 0; frame < scenario.frames; ++frame) {
        lines.push_back(render_state(state));
        state = apply_schedule(state, scenario.schedule);
    }
    lines.push_back(render_state(state) + " END");
    return lines;
}

std::vector<std::string> run_scenario_parallel(const Scenario& scenario, const RunConfig& cfg) {
    std::vector<std::string> lines;
    WorldState state = scenario.start_state();
    RunConfig frame_cfg = cfg;
    for (unsigned frame = 0; frame < scenario.frames; ++frame) {
        lines.push_back(render_state(state));
        frame_cfg.seed = cfg.seed + frame;
        state = run_parallel(state, scenario.schedule, frame_cfg).state;
    }
    lines.push_back(render_state(state) + " END");
    return lines;
}

std::optional<Scenario> find_scenario(const std::string& name) {
    if (name == "toy-phys") return toy_physics_scenario();
    if (name == "disjoint-entities") return disjoint_entities_scenario();
    return std::nullopt;
}

}  // namespace coreecs
