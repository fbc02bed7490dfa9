// hornet: command-line driver for stochastic nets-within-nets models.
//
// Subcommands: validate, events, rg, simulate, bos. Model files use the
// .hornet text format documented in the README. All outputs are
// deterministic given the model, the flags, and the seed.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "hornets/bos.hpp"
#include "hornets/mape.hpp"
#include "hornets/model_parser.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitModel = 3;
constexpr int kExitResource = 4;

std::uint64_t defaultSeed() {
    if (const char* env = std::getenv("HORNET_SEED")) return std::strtoull(env, nullptr, 10);
    return 0;
}

void writeFileOrStdout(const std::optional<std::string>& path, const std::string& content) {
    if (!path || *path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(*path, std::ios::binary);
    if (!out) throw hornets::ModelError("cannot write to '" + *path + "'");
    out << content;
}

struct LoadFlags {
    std::string modelPath;
    double mapeGamma = -1.0; // < 0: keep declared rates
    bool floatProbabilities = false;
};

hornets::Model loadModel(const LoadFlags& flags) {
    hornets::Model model = hornets::loadModelFile(flags.modelPath);
    if (flags.mapeGamma >= 0.0) {
        hornets::MapeConfig cfg{flags.mapeGamma, false};
        model.system = hornets::applyMapeRates(model.system, hornets::OpRegistry::builtins(), cfg);
        model.options.gamma = flags.mapeGamma;
    }
    if (flags.floatProbabilities) model.options.rationalPrint = false;
    return model;
}

void addLoadFlags(CLI::App* cmd, LoadFlags& flags) {
    cmd->add_option("model", flags.modelPath, "model file (.hornet)")->required();
    cmd->add_option("--mape-gamma", flags.mapeGamma,
                    "re-rate every system transition as gamma^TC at load");
    cmd->add_flag("--float", flags.floatProbabilities,
                  "print probabilities as floats instead of exact fractions");
}

int runValidate(const LoadFlags& flags) {
    hornets::Model model = loadModel(flags);
    std::cout << "ok: " << model.system.places().size() << " system places, "
              << model.system.transitions().size() << " system transitions, "
              << model.constants.size() << " object nets, digest "
              << hornets::hexDigest(model.digest()) << "\n";
    return kExitOk;
}

int runEvents(const LoadFlags& flags) {
    hornets::Model model = loadModel(flags);
    hornets::EventEngine engine(model.system, hornets::OpRegistry::builtins(),
                                model.names.get(), model.engineLimits());
    auto probs = hornets::firingProbabilities(engine, model.initial, model.stoch());
    if (probs.empty()) {
        std::cout << "deadlock: no enabled events\n";
        return kExitOk;
    }
    for (const auto& ep : probs) {
        std::cout << hornets::formatProbability(ep.probability, model.options.rationalPrint)
                  << "  " << ep.event.print(model.names.get());
        if (ep.modes.size() > 1) std::cout << "  (" << ep.modes.size() << " modes)";
        std::cout << "\n";
    }
    return kExitOk;
}

struct RgFlags {
    std::optional<std::string> dotPath;
    std::optional<std::string> jsonPath;
    std::optional<std::size_t> maxStates;
    std::optional<std::size_t> maxDepth;
    bool parallel = false;
};

int runRg(const LoadFlags& flags, const RgFlags& rg) {
    hornets::Model model = loadModel(flags);
    hornets::EventEngine engine(model.system, hornets::OpRegistry::builtins(),
                                model.names.get(), model.engineLimits());
    hornets::DmcLimits limits = model.dmcLimits();
    if (rg.maxStates) limits.maxStates = *rg.maxStates;
    if (rg.maxDepth) limits.maxDepth = *rg.maxDepth;
    limits.parallel = rg.parallel;

    hornets::Dmc dmc = hornets::buildDmc(engine, model.initial, model.stoch(), limits);
    if (rg.jsonPath) writeFileOrStdout(rg.jsonPath, dmc.toJson(model.names.get()));
    if (rg.dotPath || !rg.jsonPath)
        writeFileOrStdout(rg.dotPath, dmc.toDot(model.names.get()));
    std::cerr << "states=" << dmc.states.size() << " edges=" << dmc.edges.size()
              << (dmc.truncated ? " truncated" : "") << "\n";
    if (dmc.truncated) {
        std::cerr << dmc.truncationNote << "\n";
        return kExitResource;
    }
    return kExitOk;
}

struct SimFlags {
    std::uint64_t seed = defaultSeed();
    std::size_t steps = 100;
    std::optional<std::string> csvPath;
};

int runSimulate(const LoadFlags& flags, const SimFlags& sim) {
    hornets::Model model = loadModel(flags);
    hornets::EventEngine engine(model.system, hornets::OpRegistry::builtins(),
                                model.names.get(), model.engineLimits());
    hornets::Trace trace =
        hornets::simulate(engine, model.initial, sim.seed, sim.steps, model.stoch());
    writeFileOrStdout(sim.csvPath, trace.toCsv(model.names.get(), model.options.rationalPrint));
    return kExitOk;
}

struct BosFlags {
    hornets::BosParams params;
    std::vector<double> payoff;
    std::uint64_t seed = defaultSeed();
    std::optional<std::string> csvPath;
};

int runBosCmd(BosFlags& flags) {
    if (!flags.payoff.empty()) {
        if (flags.payoff.size() != 8)
            throw hornets::ModelError("--payoff needs 8 numbers: r0,r1 for a0a1,a0b1,b0a1,b0b1");
        std::size_t k = 0;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                flags.params.payoff[i][j].first = flags.payoff[k++];
                flags.params.payoff[i][j].second = flags.payoff[k++];
            }
    }
    hornets::BosRun run = hornets::runBos(flags.params, flags.seed);
    writeFileOrStdout(flags.csvPath, run.toCsv());
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"stochastic nets-within-nets engine"};
    app.require_subcommand(1);

    LoadFlags load;
    RgFlags rg;
    SimFlags sim;
    BosFlags bos;

    CLI::App* validateCmd = app.add_subcommand("validate", "parse and type-check a model");
    addLoadFlags(validateCmd, load);

    CLI::App* eventsCmd =
        app.add_subcommand("events", "list the events enabled initially, with probabilities");
    addLoadFlags(eventsCmd, load);

    CLI::App* rgCmd = app.add_subcommand("rg", "build the reachability graph / Markov chain");
    addLoadFlags(rgCmd, load);
    rgCmd->add_option("--dot", rg.dotPath, "write DOT here ('-' = stdout)");
    rgCmd->add_option("--json", rg.jsonPath, "write JSON here ('-' = stdout)");
    rgCmd->add_option("--max-states", rg.maxStates, "state cap");
    rgCmd->add_option("--max-depth", rg.maxDepth, "depth cap");
    rgCmd->add_flag("--parallel", rg.parallel, "expand BFS levels with threads");

    CLI::App* simCmd = app.add_subcommand("simulate", "run one seeded trace");
    addLoadFlags(simCmd, load);
    simCmd->add_option("--seed", sim.seed, "rng seed (default: $HORNET_SEED or 0)");
    simCmd->add_option("--steps", sim.steps, "maximum number of steps")->required();
    simCmd->add_option("--csv", sim.csvPath, "write the trace CSV here ('-' = stdout)");

    CLI::App* bosCmd = app.add_subcommand("bos", "run the battle-of-sexes adaptation scenario");
    bosCmd->add_option("--a0", bos.params.a0Rate, "initial rate of a0");
    bosCmd->add_option("--b0", bos.params.b0Rate, "initial rate of b0");
    bosCmd->add_option("--a1", bos.params.a1Rate, "initial rate of a1");
    bosCmd->add_option("--b1", bos.params.b1Rate, "initial rate of b1");
    bosCmd->add_option("--threshold", bos.params.threshold, "dominance threshold");
    bosCmd->add_option("--gamma", bos.params.gamma, "mape discount");
    bosCmd->add_option("--steps", bos.params.horizon, "number of steps");
    bosCmd->add_option("--seed", bos.seed, "rng seed (default: $HORNET_SEED or 0)");
    bosCmd->add_option("--payoff", bos.payoff, "eight payoff values")->delimiter(',');
    bosCmd->add_option("--csv", bos.csvPath, "write the run CSV here ('-' = stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (validateCmd->parsed()) return runValidate(load);
        if (eventsCmd->parsed()) return runEvents(load);
        if (rgCmd->parsed()) return runRg(load, rg);
        if (simCmd->parsed()) return runSimulate(load, sim);
        if (bosCmd->parsed()) return runBosCmd(bos);
    } catch (const hornets::ResourceLimitError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitResource;
    } catch (const hornets::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitModel;
    }
    return kExitUsage;
}
