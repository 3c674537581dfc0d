#include "limid/io.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <sstream>

#include <json.hpp>

#include "limid/errors.hpp"

namespace limid {

using nlohmann::json;

namespace {

json parse_json(const std::string& text) {
    json doc = json::parse(text, nullptr, /*allow_exceptions=*/false);
    if (doc.is_discarded()) throw InputError("document is not valid JSON");
    return doc;
}

VarKind kind_from(const std::string& s, const std::string& path) {
    if (s == "chance") return VarKind::Chance;
    if (s == "decision") return VarKind::Decision;
    if (s == "value") return VarKind::Value;
    throw InputError(path + ": unknown kind '" + s + "'");
}

std::vector<double> numbers_from(const json& j, const std::string& path) {
    if (!j.is_array()) throw InputError(path + ": expected a flat list of numbers");
    std::vector<double> out;
    for (const auto& x : j) {
        if (!x.is_number()) throw InputError(path + ": expected a number");
        out.push_back(x.get<double>());
    }
    return out;
}

} // namespace

Diagram parse_diagram(const std::string& text) {
    const json doc = parse_json(text);
    if (!doc.is_object()) throw InputError("document root must be an object");
    if (!doc.contains("variables") || !doc["variables"].is_array())
        throw InputError("variables: missing or not a list");

    std::vector<Variable> vars;
    for (std::size_t i = 0; i < doc["variables"].size(); ++i) {
        const json& jv = doc["variables"][i];
        const std::string path = "variables[" + std::to_string(i) + "]";
        if (!jv.is_object() || !jv.contains("id") || !jv["id"].is_string())
            throw InputError(path + ": needs a string id");
        if (!jv.contains("kind") || !jv["kind"].is_string())
            throw InputError(path + ": needs a kind");
        Variable v;
        v.id = jv["id"].get<std::string>();
        v.kind = kind_from(jv["kind"].get<std::string>(), path + ".kind");
        if (jv.contains("states")) {
            if (!jv["states"].is_array()) throw InputError(path + ".states: expected a list");
            for (const auto& s : jv["states"]) {
                if (!s.is_string()) throw InputError(path + ".states: expected string labels");
                v.states.push_back(s.get<std::string>());
            }
        }
        vars.push_back(std::move(v));
    }

    std::vector<std::pair<std::string, std::string>> arcs;
    if (doc.contains("arcs")) {
        if (!doc["arcs"].is_array()) throw InputError("arcs: expected a list of pairs");
        for (std::size_t i = 0; i < doc["arcs"].size(); ++i) {
            const json& ja = doc["arcs"][i];
            if (!ja.is_array() || ja.size() != 2 || !ja[0].is_string() || !ja[1].is_string())
                throw InputError("arcs[" + std::to_string(i) + "]: expected [parent, child]");
            arcs.emplace_back(ja[0].get<std::string>(), ja[1].get<std::string>());
        }
    }

    // tables arrive as flat lists; scopes and cardinalities come from the
    // declared families
    std::map<std::string, int> card;
    std::map<std::string, VarKind> kind;
    for (const auto& v : vars) {
        card[v.id] = static_cast<int>(v.states.size());
        kind[v.id] = v.kind;
    }
    auto family_scope = [&](const std::string& id, bool include_self) {
        std::vector<std::string> scope;
        for (const auto& v : vars)
            for (const auto& [p, c] : arcs)
                if (p == v.id && c == id) scope.push_back(v.id);
        if (include_self) scope.push_back(id);
        return scope;
    };
    auto build_table = [&](const std::string& id, const std::vector<double>& vals,
                           bool include_self, const std::string& path) {
        std::vector<std::string> scope = family_scope(id, include_self);
        std::vector<int> cards;
        std::size_t expect = 1;
        for (const auto& s : scope) {
            cards.push_back(card.at(s));
            expect *= static_cast<std::size_t>(card.at(s));
        }
        if (vals.size() != expect)
            throw InputError(path + ": table has " + std::to_string(vals.size()) +
                             " entries, expected " + std::to_string(expect));
        return Factor(std::move(scope), std::move(cards), vals);
    };

    std::map<std::string, Factor> cpts, utils;
    if (doc.contains("cpts")) {
        if (!doc["cpts"].is_object()) throw InputError("cpts: expected an object");
        for (const auto& [id, jv] : doc["cpts"].items()) {
            if (!kind.count(id)) throw InputError("cpts." + id + ": unknown variable");
            cpts.emplace(id, build_table(id, numbers_from(jv, "cpts." + id), true, "cpts." + id));
        }
    }
    if (doc.contains("utilities")) {
        if (!doc["utilities"].is_object()) throw InputError("utilities: expected an object");
        for (const auto& [id, jv] : doc["utilities"].items()) {
            if (!kind.count(id)) throw InputError("utilities." + id + ": unknown variable");
            utils.emplace(id, build_table(id, numbers_from(jv, "utilities." + id), false,
                                          "utilities." + id));
        }
    }

    bool strict = true;
    if (doc.contains("strict_normalization")) {
        if (!doc["strict_normalization"].is_boolean())
            throw InputError("strict_normalization: expected a boolean");
        strict = doc["strict_normalization"].get<bool>();
    }
    return Diagram(std::move(vars), std::move(arcs), std::move(cpts), std::move(utils), strict);
}

std::string serialize_diagram(const Diagram& d) {
    json doc;
    doc["variables"] = json::array();
    for (const auto& v : d.variables()) {
        json jv;
        jv["id"] = v.id;
        jv["kind"] = to_string(v.kind);
        jv["states"] = v.states;
        doc["variables"].push_back(std::move(jv));
    }
    doc["arcs"] = json::array();
    for (const auto& [p, c] : d.arcs()) doc["arcs"].push_back(json::array({p, c}));
    doc["cpts"] = json::object();
    for (const auto& [id, f] : d.cpts()) doc["cpts"][id] = f.values();
    doc["utilities"] = json::object();
    for (const auto& [id, f] : d.utilities()) doc["utilities"][id] = f.values();
    doc["strict_normalization"] = d.strict_normalization();
    return doc.dump(2) + "\n";
}

namespace {

std::string config_key(const Diagram& d, const std::vector<std::string>& parents,
                       const std::vector<int>& config) {
    std::string key;
    for (std::size_t i = 0; i < parents.size(); ++i) {
        if (i) key += ",";
        key += d.var(d.index_of(parents[i])).states[config[i]];
    }
    return key;
}

} // namespace

Strategy parse_strategy(const std::string& text, const Diagram& d) {
    const json doc = parse_json(text);
    if (!doc.is_object() || !doc.contains("policies") || !doc["policies"].is_object())
        throw InputError("policies: missing or not an object");
    Strategy s;
    for (const auto& [did, jp] : doc["policies"].items()) {
        if (!d.has_var(did) || d.kind_of(did) != VarKind::Decision)
            throw InputError("policies." + did + ": not a decision variable");
        if (!jp.is_object()) throw InputError("policies." + did + ": expected an object");
        const std::vector<std::string> parents = d.parent_ids(did);
        const std::vector<int> pcards = d.parent_cards(did);
        const Variable& dv = d.var(d.index_of(did));
        Policy pol{did, std::vector<int>(d.parent_config_count(did), -1)};
        std::vector<int> config(parents.size(), 0);
        std::size_t idx = 0;
        do {
            const std::string key = config_key(d, parents, config);
            if (!jp.contains(key))
                throw InputError("policies." + did + ": missing entry for configuration '" +
                                 key + "'");
            const json& choice = jp[key];
            if (!choice.is_string())
                throw InputError("policies." + did + "['" + key + "']: expected a state label");
            const auto& states = dv.states;
            const auto it = std::find(states.begin(), states.end(), choice.get<std::string>());
            if (it == states.end())
                throw InputError("policies." + did + "['" + key + "']: unknown state '" +
                                 choice.get<std::string>() + "'");
            pol.table[idx++] = static_cast<int>(it - states.begin());
        } while (next_assignment(config, pcards));
        s.policies.emplace(did, std::move(pol));
    }
    for (const auto& did : d.decision_ids())
        if (!s.policies.count(did))
            throw InputError("policies: missing decision '" + did + "'");
    return s;
}

std::string serialize_strategy(const Strategy& s, const Diagram& d) {
    json doc;
    doc["policies"] = json::object();
    for (const auto& [did, pol] : s.policies) {
        const std::vector<std::string> parents = d.parent_ids(did);
        const std::vector<int> pcards = d.parent_cards(did);
        const Variable& dv = d.var(d.index_of(did));
        json jp = json::object();
        std::vector<int> config(parents.size(), 0);
        std::size_t idx = 0;
        do {
            jp[config_key(d, parents, config)] = dv.states[pol.table[idx++]];
        } while (next_assignment(config, pcards));
        doc["policies"][did] = std::move(jp);
    }
    return doc.dump(2) + "\n";
}

std::string serialize_stats(const SolveResult& result) {
    json doc;
    doc["meu"] = result.meu;
    doc["width"] = result.stats.width;
    doc["order"] = result.stats.order;
    doc["max_set_cardinality"] = result.stats.max_set_cardinality;
    doc["per_step_cardinalities"] = result.stats.per_step_cardinalities;
    doc["strategy_count"] = result.stats.strategy_count.str();
    doc["wall_time_ms"] = result.stats.wall_time_ms;
    if (result.stats.epsilon) doc["epsilon"] = *result.stats.epsilon;
    return doc.dump(2) + "\n";
}

Cnf parse_dimacs(std::istream& in) {
    Cnf cnf;
    int declared_clauses = -1;
    std::string line;
    std::vector<int> current;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == 'c') continue;
        if (line[0] == 'p') {
            std::istringstream hs(line);
            std::string p, fmt;
            if (!(hs >> p >> fmt >> cnf.var_count >> declared_clauses) || fmt != "cnf")
                throw InputError("dimacs: malformed problem line '" + line + "'");
            continue;
        }
        std::istringstream ls(line);
        int lit;
        while (ls >> lit) {
            if (lit == 0) {
                cnf.clauses.push_back(current);
                current.clear();
            } else {
                current.push_back(lit);
            }
        }
    }
    if (!current.empty()) cnf.clauses.push_back(current);
    if (cnf.var_count <= 0) throw InputError("dimacs: missing or bad problem line");
    if (declared_clauses >= 0 && static_cast<int>(cnf.clauses.size()) != declared_clauses)
        throw InputError("dimacs: clause count does not match the problem line");
    for (const auto& cl : cnf.clauses)
        for (int l : cl)
            if (l == 0 || std::abs(l) > cnf.var_count)
                throw InputError("dimacs: literal out of range");
    return cnf;
}

} // namespace limid
