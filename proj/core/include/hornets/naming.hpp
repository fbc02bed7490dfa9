#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <string>

#include "hornets/object_net.hpp"

namespace hornets {

// Display names for object nets, keyed by structural identity. Names are
// cosmetic only: canonical encodings never use them. First registration
// wins, so equal nets always print the same way within a session.
class NameTable {
public:
    void registerNet(const ObjectNet& net, const std::string& name) {
        std::lock_guard<std::mutex> lock(mu_);
        names_.emplace(net.canonicalKey(), name);
    }

    std::optional<std::string> name(const ObjectNet& net) const {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = names_.find(net.canonicalKey());
        if (it == names_.end()) return std::nullopt;
        return it->second;
    }

    std::string displayName(const ObjectNet& net) const {
        if (auto n = name(net)) return *n;
        return "net#" + shortHexDigest(net.digest());
    }

private:
    mutable std::mutex mu_;
    std::map<std::string, std::string> names_;
};

inline std::string displayName(const NameTable* names, const ObjectNet& net) {
    if (names) return names->displayName(net);
    return "net#" + shortHexDigest(net.digest());
}

} // namespace hornets
