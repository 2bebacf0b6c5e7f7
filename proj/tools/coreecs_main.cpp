#include <CLI11.hpp>
#include <iostream>
#include <string>

#include "coreecs/coreecs.hpp"

namespace {

int run_demo(const std::string& name, int frames, const std::string& interpreter,
             unsigned workers, std::uint64_t seed) {
    auto scenario = coreecs::find_scenario(name);
    if (!scenario) {
        std::cerr << "unknown scenario '" << name << "'\n";
        return 2;
    }
    if (frames >= 0) scenario->frames = static_cast<unsigned>(frames);

    std::vector<std::string> lines;
    if (interpreter == "ref") {
        lines = run_scenario_reference(*scenario);
    } else {
        coreecs::RunConfig cfg;
        cfg.workers = workers;
        cfg.seed = seed;
        lines = run_scenario_parallel(*scenario, cfg);
    }
    for (const std::string& line : lines) {
        std::cout << line << "\n";
    }
    return 0;
}

int run_check(const std::string& name) {
    auto scenario = coreecs::find_scenario(name);
    if (!scenario) {
        std::cerr << "unknown scenario '" << name << "'\n";
        return 2;
    }
    coreecs::WorldState start = scenario->start_state();
    coreecs::SafetyReport report = coreecs::check_safe(start, scenario->schedule);

    bool witness_found = false;
    if (report.verdict == coreecs::SafetyVerdict::Unknown) {
        try {
            auto verdict = coreecs::brute_force_determinism(start, scenario->schedule);
            if (!verdict.deterministic) {
                // Only an exhibited counterexample justifies Unsafe.
                report.verdict = coreecs::SafetyVerdict::Unsafe;
                witness_found = true;
            }
        } catch (const coreecs::TooManyLinearizations&) {
            // Leave the verdict Unknown.
        }
    }

    std::cout << "schedule: " << scenario->schedule.render() << "\n";
    std::cout << report.render();
    std::cout << "verdict: " << coreecs::to_string(report.verdict) << "\n";

    bool statically_blessed =
        coreecs::statically_safe(scenario->schema, scenario->schedule, scenario->declared_labels);
    std::cout << "static rules: " << (statically_blessed ? "safe" : "not applicable") << "\n";
    return witness_found ? 1 : 0;
}

int run_categories() {
    for (const coreecs::Scenario& scenario : coreecs::mutation_category_suite()) {
        std::cout << "== " << scenario.name << "\n";
        for (const std::string& line : run_scenario_reference(scenario)) {
            std::cout << line << "\n";
        }
        coreecs::SafetyReport report =
            coreecs::check_safe(scenario.start_state(), scenario.schedule);
        std::cout << "verdict: " << coreecs::to_string(report.verdict) << "\n";
    }
    return 0;
}

int run_fuzz(std::uint64_t instances, std::uint64_t max_invocations, std::uint64_t seed) {
    coreecs::FuzzSummary summary = coreecs::fuzz(instances, max_invocations, seed);
    std::cout << summary.render();
    return summary.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Deterministic-by-construction ECS kernel"};
    app.require_subcommand(1);

    std::string demo_name;
    int demo_frames = -1;
    std::string demo_interpreter = "ref";
    unsigned demo_workers = 4;
    std::uint64_t demo_seed = 0;
    auto* demo = app.add_subcommand("demo", "Run a built-in scenario and print each frame");
    demo->add_option("scenario", demo_name, "toy-phys or disjoint-entities")->required();
    demo->add_option("--frames", demo_frames, "Number of schedule applications");
    demo->add_option("--interpreter", demo_interpreter, "ref or parallel")
        ->check(CLI::IsMember({"ref", "parallel"}));
    demo->add_option("--workers", demo_workers, "Worker threads for the parallel interpreter");
    demo->add_option("--seed", demo_seed, "Dispatch-order seed for the parallel interpreter");

    std::string check_name;
    auto* check = app.add_subcommand("check", "Print a schedule-safety report for a scenario");
    check->add_option("scenario", check_name, "toy-phys or disjoint-entities")->required();

    auto* categories =
        app.add_subcommand("categories", "Run the mutation-category scenarios one frame each");

    std::uint64_t fuzz_instances = 200;
    std::uint64_t fuzz_max_invocations = 8;
    std::uint64_t fuzz_seed = 42;
    auto* fuzz = app.add_subcommand(
        "fuzz", "Generate random programs and brute-force the determinism of every safe one");
    fuzz->add_option("--instances", fuzz_instances, "Number of generated programs");
    fuzz->add_option("--max-invocations", fuzz_max_invocations,
                     "Skip instances with more invocations than this");
    fuzz->add_option("--seed", fuzz_seed, "Generator seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*demo) {
            return run_demo(demo_name, demo_frames, demo_interpreter, demo_workers, demo_seed);
        }
        if (*check) {
            return run_check(check_name);
        }
        if (*categories) {
            return run_categories();
        }
        if (*fuzz) {
            return run_fuzz(fuzz_instances, fuzz_max_invocations, fuzz_seed);
        }
    } catch (const coreecs::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
