#pragma once

#include <memory>

#include "hornets/event_engine.hpp"
#include "hornets/model_parser.hpp"

namespace fixtures {

// The workflow-composition example: object nets N1 (i1 -a-> u -b-> v -c-> f1)
// and N2 (i2 -d-> s -e-> f2), one system transition t moving x and y into
// their parallel composition. Initially p[N1, v] + q[N2, s].
struct Fig2 {
    std::map<hornets::Symbol, hornets::Kind> kinds;
    hornets::ObjectNetRef n1, n2;
    hornets::SystemNet system;
    hornets::NestedMarking mu0;
    std::shared_ptr<hornets::NameTable> names;
};
Fig2 makeFig2();

// The conflict example: system transitions a (rate 2) and b (rate 3) both
// synchronise over one channel with net-token N offering r (rate 5) and
// s (rate 7).
struct Fig3 {
    std::map<hornets::Symbol, hornets::Kind> kinds;
    hornets::ObjectNetRef n;
    hornets::SystemNet system;
    hornets::NestedMarking mu0;
    std::shared_ptr<hornets::NameTable> names;
};
Fig3 makeFig3();

// Bundled model files; resolves $HORNET_MODELS or falls back to ../models.
std::string modelPath(const std::string& name);

} // namespace fixtures
