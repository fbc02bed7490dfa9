#include "hornets/stochastic.hpp"

#include <algorithm>
#include <cstdio>
#include <deque>
#include <random>
#include <sstream>
#include <thread>

#include "hornets/errors.hpp"

namespace hornets {

StochasticOptions::EventRateKey StochasticOptions::keyFor(const Event& ev) {
    EventRateKey key;
    std::map<Symbol, std::uint64_t> pooled;
    if (ev.type == Event::Type::Sync) {
        key.sysTransition = ev.transition;
        for (const auto& [net, tset] : ev.theta)
            for (const auto& [t, n] : tset.entries()) pooled[t] += n;
    } else {
        pooled[ev.objTransition] = 1;
    }
    key.objTransitions.assign(pooled.begin(), pooled.end());
    return key;
}

Rat eventRateProduct(const SystemNet& sys, const Event& ev, const StochasticOptions& opt) {
    Rat rate;
    if (ev.type == Event::Type::Sync) {
        rate = ratFromDouble(sys.transition(ev.transition).rate);
        for (const auto& [net, tset] : ev.theta)
            for (const auto& [t, n] : tset.entries())
                rate *= ratPow(ratFromDouble(net->rate(t)), n);
    } else {
        rate = ratFromDouble(opt.pseudoTransitionRate);
        rate *= ratFromDouble(ev.net->rate(ev.objTransition));
    }
    if (rate <= 0) throw ModelError("event rate must be positive");
    return rate;
}

Rat eventRate(const SystemNet& sys, const Event& ev, const StochasticOptions& opt) {
    if (opt.explicitRates.empty()) return eventRateProduct(sys, ev, opt);
    auto it = opt.explicitRates.find(StochasticOptions::keyFor(ev));
    if (it == opt.explicitRates.end())
        throw ModelError("no explicit rate declared for event " + ev.print(nullptr));
    return ratFromDouble(it->second);
}

std::vector<EventProbability> firingProbabilities(const EventEngine& engine,
                                                  const NestedMarking& mu,
                                                  const StochasticOptions& opt) {
    std::vector<EventProbability> out;
    Rat total;
    for (EnabledEvent& ee : engine.enabledEvents(mu)) {
        EventProbability ep;
        ep.rate = eventRate(engine.system(), ee.event, opt);
        ep.event = std::move(ee.event);
        ep.modes = std::move(ee.modes);
        total += ep.rate;
        out.push_back(std::move(ep));
    }
    for (EventProbability& ep : out) ep.probability = ep.rate / total;
    return out;
}

// ---------------------------------------------------------------------------
// DMC construction

namespace {

struct RawEdge {
    std::string fromKey;
    Event event;
    Mode mode;
    std::string toKey;
    Rat prob;
};

struct Expansion {
    std::vector<RawEdge> edges;
    std::vector<NestedMarking> successors;
};

Expansion expandState(const EventEngine& engine, const NestedMarking& mu,
                      const StochasticOptions& opt) {
    Expansion out;
    const std::string fromKey = mu.encode();
    for (const EventProbability& ep : firingProbabilities(engine, mu, opt)) {
        Rat edgeProb = ep.probability / Rat(ep.modes.size());
        for (const Mode& mode : ep.modes) {
            NestedMarking next = engine.fire(mu, ep.event, mode);
            out.edges.push_back(RawEdge{fromKey, ep.event, mode, next.encode(), edgeProb});
            out.successors.push_back(std::move(next));
        }
    }
    return out;
}

} // namespace

Dmc buildDmc(const EventEngine& engine, const NestedMarking& mu0, const StochasticOptions& opt,
             const DmcLimits& limits) {
    if (limits.maxStates == 0 || limits.maxDepth == 0)
        throw ModelError("state and depth limits must be positive");

    std::map<std::string, NestedMarking> known; // canonical key -> marking
    std::vector<RawEdge> rawEdges;
    bool truncated = false;
    std::string note;

    const std::string initialKey = mu0.encode();
    known.emplace(initialKey, mu0);

    std::deque<std::pair<NestedMarking, std::size_t>> frontier;
    frontier.emplace_back(mu0, 0);

    unsigned threadCount = limits.threads ? limits.threads
                                          : std::max(1u, std::thread::hardware_concurrency());

    while (!frontier.empty()) {
        // One BFS level at a time; expansion is pure, merging is sequential.
        std::vector<std::pair<NestedMarking, std::size_t>> level(frontier.begin(),
                                                                 frontier.end());
        frontier.clear();

        std::vector<Expansion> expansions(level.size());
        auto work = [&](std::size_t begin, std::size_t end) {
            for (std::size_t i = begin; i < end; ++i)
                expansions[i] = expandState(engine, level[i].first, opt);
        };
        if (limits.parallel && level.size() > 1 && threadCount > 1) {
            std::vector<std::thread> threads;
            std::size_t chunk = (level.size() + threadCount - 1) / threadCount;
            for (unsigned t = 0; t < threadCount; ++t) {
                std::size_t b = t * chunk, e = std::min(level.size(), b + chunk);
                if (b >= e) break;
                threads.emplace_back(work, b, e);
            }
            for (auto& th : threads) th.join();
        } else {
            work(0, level.size());
        }

        // Sequential merge: the state table sees insert-if-absent only.
        for (std::size_t i = 0; i < level.size(); ++i) {
            std::size_t depth = level[i].second;
            Expansion& ex = expansions[i];
            for (std::size_t j = 0; j < ex.edges.size(); ++j) {
                rawEdges.push_back(std::move(ex.edges[j]));
                const std::string& key = rawEdges.back().toKey;
                if (!known.count(key)) {
                    if (known.size() >= limits.maxStates) {
                        truncated = true;
                        rawEdges.pop_back(); // edge would leave the explored set
                        continue;
                    }
                    known.emplace(key, ex.successors[j]);
                    if (depth + 1 < limits.maxDepth)
                        frontier.emplace_back(ex.successors[j], depth + 1);
                    else
                        truncated = true;
                }
            }
        }
        if (truncated && note.empty())
            note = "state-space truncated (limit hit with frontier size " +
                   std::to_string(frontier.size()) + ")";
    }

    // Canonical state ids: sorted by encoding.
    Dmc dmc;
    dmc.truncated = truncated;
    dmc.truncationNote = note;
    std::map<std::string, std::size_t> index;
    for (auto& [key, marking] : known) {
        index.emplace(key, dmc.states.size());
        dmc.stateKeys.push_back(key);
        dmc.states.push_back(std::move(marking));
    }
    dmc.initial = index.at(initialKey);
    dmc.outDegree.assign(dmc.states.size(), 0);
    for (RawEdge& e : rawEdges) {
        Dmc::Edge edge{index.at(e.fromKey), std::move(e.event), std::move(e.mode),
                       index.at(e.toKey), std::move(e.prob)};
        ++dmc.outDegree[edge.from];
        dmc.edges.push_back(std::move(edge));
    }
    std::sort(dmc.edges.begin(), dmc.edges.end(), [](const Dmc::Edge& a, const Dmc::Edge& b) {
        if (a.from != b.from) return a.from < b.from;
        if (auto c = a.event.encode().compare(b.event.encode()); c != 0) return c < 0;
        if (auto c = a.mode.encode().compare(b.mode.encode()); c != 0) return c < 0;
        return a.to < b.to;
    });
    return dmc;
}

std::vector<double> transientDistribution(const Dmc& dmc, std::size_t steps,
                                          bool allowTruncated) {
    if (dmc.truncated && !allowTruncated)
        throw ResourceLimitError("transient analysis on a truncated chain (" +
                                 dmc.truncationNote + "); pass allow-truncated to override");
    std::vector<double> p(dmc.states.size(), 0.0);
    p[dmc.initial] = 1.0;
    for (std::size_t s = 0; s < steps; ++s) {
        std::vector<double> next(dmc.states.size(), 0.0);
        for (std::size_t i = 0; i < dmc.states.size(); ++i)
            if (dmc.isDeadlock(i)) next[i] += p[i]; // absorbing
        for (const Dmc::Edge& e : dmc.edges)
            next[e.to] += p[e.from] * ratToDouble(e.prob);
        p = std::move(next);
    }
    return p;
}

// ---------------------------------------------------------------------------
// Simulation

namespace {

double next53(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

} // namespace

Trace simulate(const EventEngine& engine, const NestedMarking& mu0, std::uint64_t seed,
               std::size_t maxSteps, const StochasticOptions& opt, const SimulateHooks* hooks) {
    Trace trace;
    trace.seed = seed;
    std::mt19937_64 rng(seed);
    NestedMarking mu = mu0;

    for (std::size_t step = 0; step < maxSteps; ++step) {
        std::vector<EventProbability> enabled = firingProbabilities(engine, mu, opt);
        if (enabled.empty()) {
            trace.deadlocked = true;
            break;
        }
        const double u = next53(rng);
        const double u2 = next53(rng);

        std::size_t chosen = enabled.size() - 1;
        double cumulative = 0.0;
        for (std::size_t i = 0; i < enabled.size(); ++i) {
            cumulative += ratToDouble(enabled[i].probability);
            if (u < cumulative) {
                chosen = i;
                break;
            }
        }
        const EventProbability& ep = enabled[chosen];
        std::size_t modeIdx = std::min(static_cast<std::size_t>(u2 * ep.modes.size()),
                                       ep.modes.size() - 1);
        const Mode& mode = ep.modes[modeIdx];

        NestedMarking after = engine.fire(mu, ep.event, mode);

        TraceStep ts;
        ts.step = step;
        ts.event = ep.event;
        ts.mode = mode;
        ts.eventProb = ep.probability;
        ts.edgeProb = ep.probability / Rat(ep.modes.size());
        ts.after = after;
        if (hooks && hooks->observe)
            ts.observed = hooks->observe(mu, enabled, ep.event, mode, after);
        trace.steps.push_back(std::move(ts));
        mu = std::move(after);
    }
    return trace;
}

// ---------------------------------------------------------------------------
// Exports

std::string csvQuote(const std::string& field) {
    bool needs = field.find_first_of(",\"\n") != std::string::npos;
    if (!needs) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}

std::string formatProbability(const Rat& p, bool rational) {
    if (rational) return ratToString(p);
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", ratToDouble(p));
    return buf;
}

std::string Trace::toCsv(const NameTable* names, bool rationalProbabilities) const {
    std::ostringstream os;
    os << "step,event,probability,observed\n";
    for (const TraceStep& ts : steps) {
        os << ts.step << "," << csvQuote(ts.event.print(names)) << ","
           << formatProbability(ts.edgeProb, rationalProbabilities) << ","
           << csvQuote(ts.observed) << "\n";
    }
    return os.str();
}

namespace {

std::string jsonEscape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char c : s) {
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        default:
            if (static_cast<unsigned char>(c) < 0x20) {
                char buf[8];
                std::snprintf(buf, sizeof(buf), "\\u%04x", static_cast<unsigned>(c));
                out += buf;
            } else {
                out += c;
            }
        }
    }
    return out;
}

std::string dotEscape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

} // namespace

std::string Dmc::toDot(const NameTable* names) const {
    std::ostringstream os;
    os << "digraph dmc {\n";
    os << "  rankdir=LR;\n";
    for (std::size_t i = 0; i < states.size(); ++i) {
        os << "  s" << i << " [label=\"" << dotEscape(states[i].print(names)) << "\"";
        if (i == initial) os << ", shape=doublecircle";
        os << "];\n";
    }
    for (const Edge& e : edges) {
        os << "  s" << e.from << " -> s" << e.to << " [label=\""
           << dotEscape(e.event.print(names)) << " : " << ratToString(e.prob) << "\"];\n";
    }
    os << "}\n";
    return os.str();
}

std::string Dmc::toJson(const NameTable* names) const {
    std::ostringstream os;
    os << "{\n  \"initial\": " << initial << ",\n";
    os << "  \"truncated\": " << (truncated ? "true" : "false") << ",\n";
    os << "  \"states\": [\n";
    for (std::size_t i = 0; i < states.size(); ++i) {
        os << "    \"" << jsonEscape(states[i].print(names)) << "\"";
        os << (i + 1 < states.size() ? ",\n" : "\n");
    }
    os << "  ],\n  \"edges\": [\n";
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const Edge& e = edges[i];
        os << "    {\"from\": " << e.from << ", \"to\": " << e.to << ", \"event\": \""
           << jsonEscape(e.event.print(names)) << "\", \"p_num\": " << numerator(e.prob).str()
           << ", \"p_den\": " << denominator(e.prob).str() << "}";
        os << (i + 1 < edges.size() ? ",\n" : "\n");
    }
    os << "  ]\n}\n";
    return os.str();
}

} // namespace hornets
