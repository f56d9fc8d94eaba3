#include "rndkit/access.hpp"

namespace rndkit {

const char* to_string(AccessLevel level) {
    switch (level) {
    case AccessLevel::tool: return "tool";
    case AccessLevel::object: return "object";
    default: return "procedure";
    }
}

const char* to_string(AccessAction action) {
    switch (action) {
    case AccessAction::read: return "read";
    case AccessAction::write: return "write";
    default: return "execute";
    }
}

const char* to_string(AccessEffect effect) {
    return effect == AccessEffect::allow ? "allow" : "deny";
}

AccessLevel access_level_from_string(const std::string& name) {
    if (name == "tool") return AccessLevel::tool;
    if (name == "object") return AccessLevel::object;
    if (name == "procedure") return AccessLevel::procedure;
    throw MalformedRule("unknown access level '" + name + "'");
}

AccessAction access_action_from_string(const std::string& name) {
    if (name == "read") return AccessAction::read;
    if (name == "write") return AccessAction::write;
    if (name == "execute") return AccessAction::execute;
    throw MalformedRule("unknown access action '" + name + "'");
}

AccessEffect access_effect_from_string(const std::string& name) {
    if (name == "allow") return AccessEffect::allow;
    if (name == "deny") return AccessEffect::deny;
    throw MalformedRule("unknown access effect '" + name + "'");
}

const AccessRule* AccessPolicy::find(const std::string& subject, AccessLevel level,
                                     const std::string& target, AccessAction action) const {
    for (const AccessRule& rule : rules_) {
        if (rule.subject == subject && rule.level == level && rule.target == target &&
            rule.action == action) {
            return &rule;
        }
    }
    return nullptr;
}

AccessPolicy grant(AccessPolicy policy, AccessRule rule) {
    if (rule.subject.empty()) throw MalformedRule("rule subject must not be empty");
    if (rule.target.empty()) throw MalformedRule("rule target must not be empty");
    for (AccessRule& existing : policy.rules_) {
        if (existing.subject == rule.subject && existing.level == rule.level &&
            existing.target == rule.target && existing.action == rule.action) {
            existing.effect = rule.effect;
            return policy;
        }
    }
    policy.rules_.push_back(std::move(rule));
    return policy;
}

AccessEffect check_access(const AccessPolicy& policy, const std::string& subject,
                          const TargetChain& chain, AccessAction action) {
    if (chain.tool_id.empty()) {
        throw MalformedRule("target chain must name a tool id");
    }
    if (chain.procedure_id && !chain.object_id) {
        throw MalformedRule("target chain with a procedure id must also name an object id");
    }
    const auto level_allows = [&](AccessLevel level, const std::string& target) {
        const AccessRule* rule = policy.find(subject, level, target, action);
        return rule != nullptr && rule->effect == AccessEffect::allow;
    };
    if (!level_allows(AccessLevel::tool, chain.tool_id)) return AccessEffect::deny;
    if (chain.object_id && !level_allows(AccessLevel::object, *chain.object_id)) {
        return AccessEffect::deny;
    }
    if (chain.procedure_id && !level_allows(AccessLevel::procedure, *chain.procedure_id)) {
        return AccessEffect::deny;
    }
    return AccessEffect::allow;
}

} // namespace rndkit
