#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rndkit/errors.hpp"

namespace rndkit {

/// Hierarchy levels, ordered tool > object > procedure. A deny (or missing
/// allow) at a higher level masks everything below it.
enum class AccessLevel { tool, object, procedure };

enum class AccessAction { read, write, execute };

enum class AccessEffect { allow, deny };

const char* to_string(AccessLevel level);
const char* to_string(AccessAction action);
const char* to_string(AccessEffect effect);
AccessLevel access_level_from_string(const std::string& name);
AccessAction access_action_from_string(const std::string& name);
AccessEffect access_effect_from_string(const std::string& name);

struct AccessRule {
    std::string subject;
    AccessLevel level = AccessLevel::tool;
    std::string target;
    AccessAction action = AccessAction::read;
    AccessEffect effect = AccessEffect::deny;

    bool operator==(const AccessRule&) const = default;
};

/// Immutable rule set, unique on (subject, level, target, action).
class AccessPolicy {
public:
    const std::vector<AccessRule>& rules() const noexcept { return rules_; }
    std::size_t size() const noexcept { return rules_.size(); }

    /// The rule matching the key exactly, if any.
    const AccessRule* find(const std::string& subject, AccessLevel level,
                           const std::string& target, AccessAction action) const;

    bool operator==(const AccessPolicy&) const = default;

    friend AccessPolicy grant(AccessPolicy policy, AccessRule rule);

private:
    std::vector<AccessRule> rules_;
};

/// Returns the policy with the rule added; a rule with the same key replaces
/// the previous effect. Throws MalformedRule for empty subject or target.
AccessPolicy grant(AccessPolicy policy, AccessRule rule);

/// The target ids along the hierarchy. A chain may stop early (tool only, or
/// tool + object); a procedure id requires an object id.
struct TargetChain {
    std::string tool_id;
    std::optional<std::string> object_id;
    std::optional<std::string> procedure_id;
};

/// Evaluates top-down through the provided chain. Every level must carry an
/// explicit allow for the subject and action; a deny or an absent rule at
/// any level yields deny. Total: never throws on a well-formed chain.
AccessEffect check_access(const AccessPolicy& policy, const std::string& subject,
                          const TargetChain& chain, AccessAction action);

} // namespace rndkit
