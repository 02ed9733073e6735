#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace agentsched::bdi {

/// Keyed beliefs with change hooks. Hooks registered for a key run
/// synchronously, in registration order, once for every write that changes
/// the stored value. Writing an identical value is a no-op.
class BeliefStore {
public:
    using Hook = std::function<void(const std::string& key, const nlohmann::json& old_value,
                                    const nlohmann::json& new_value)>;

    /// Returns true if the value changed (and hooks ran).
    bool update(const std::string& key, nlohmann::json value) {
        auto it = entries_.find(key);
        nlohmann::json old_value;
        if (it != entries_.end()) {
            if (it->second.value == value) {
                return false;
            }
            old_value = std::move(it->second.value);
            it->second.value = std::move(value);
            ++it->second.version;
        } else {
            it = entries_.emplace(key, Entry{std::move(value), 1}).first;
        }
        ++version_;
        auto hooks = hooks_.find(key);
        if (hooks != hooks_.end()) {
            // Copy: a hook may register further hooks.
            const auto snapshot = hooks->second;
            const nlohmann::json current = it->second.value;
            for (const auto& hook : snapshot) {
                ++hooks_fired_;
                hook(key, old_value, current);
            }
        }
        return true;
    }

    void on_change(const std::string& key, Hook hook) { hooks_[key].push_back(std::move(hook)); }

    [[nodiscard]] bool contains(const std::string& key) const { return entries_.contains(key); }

    [[nodiscard]] const nlohmann::json& get(const std::string& key) const {
        static const nlohmann::json null_value;
        auto it = entries_.find(key);
        return it == entries_.end() ? null_value : it->second.value;
    }

    /// Number of value-changing writes across all keys.
    [[nodiscard]] std::uint64_t version() const noexcept { return version_; }
    [[nodiscard]] std::uint64_t version(const std::string& key) const {
        auto it = entries_.find(key);
        return it == entries_.end() ? 0 : it->second.version;
    }
    [[nodiscard]] std::uint64_t hooks_fired() const noexcept { return hooks_fired_; }

private:
    struct Entry {
        nlohmann::json value;
        std::uint64_t version = 0;
    };
    std::map<std::string, Entry> entries_;
    std::map<std::string, std::vector<Hook>> hooks_;
    std::uint64_t version_ = 0;
    std::uint64_t hooks_fired_ = 0;
};

}  // namespace agentsched::bdi
