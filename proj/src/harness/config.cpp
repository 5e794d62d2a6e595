#include <cmath>
#include <fstream>
#include <numbers>
#include <regex>
#include <set>
#include <sstream>

#include "expspline/errors.hpp"
#include "expspline/harness.hpp"

namespace expspline {

namespace {

const std::set<std::string> kKeys = {"domain", "knots", "n",     "frequencies", "xi",          "p",
                                     "order",  "function", "clamp", "dense_points", "description"};

[[noreturn]] void fail(const std::string& key, const std::string& what) {
    throw ConfigError("config key '" + key + "': " + what);
}

std::vector<double> real_list(const nlohmann::json& v, const std::string& key) {
    if (!v.is_array()) fail(key, "expected an array of numbers");
    std::vector<double> out;
    for (const auto& e : v) out.push_back(parse_real(e, key));
    return out;
}

template <std::size_t N>
std::array<double, N> real_tuple(const nlohmann::json& v, const std::string& key) {
    const auto list = real_list(v, key);
    if (list.size() != N) fail(key, "expected " + std::to_string(N) + " numbers per entry");
    std::array<double, N> out{};
    std::copy(list.begin(), list.end(), out.begin());
    return out;
}

TestFunction function_from_object(const nlohmann::json& v) {
    if (!v.contains("name") || !v["name"].is_string()) fail("function", "object needs a string 'name' or 'samples'");
    const std::string name = v["name"].get<std::string>();
    std::ostringstream spec;
    spec << name;
    if (v.contains("a")) spec << ":" << format_real(parse_real(v["a"], "function.a"));
    if (v.contains("k")) {
        if (!v["k"].is_number_integer()) fail("function.k", "expected an integer");
        if (name == "t^k" || name == "monomial") return monomial_function(v["k"].get<int>());
        fail("function.k", "only monomials take a degree");
    }
    return make_test_function(spec.str());
}

template <class T>
std::vector<T> broadcast(const std::vector<T>& list, int intervals, const std::string& key) {
    if (static_cast<int>(list.size()) == intervals) return list;
    if (list.size() == 1) return std::vector<T>(intervals, list[0]);
    std::ostringstream msg;
    msg << "has " << list.size() << " entries but the grid has " << intervals << " intervals";
    fail(key, msg.str());
}

}  // namespace

double parse_real(const nlohmann::json& value, const std::string& key) {
    if (value.is_number()) {
        const double v = value.get<double>();
        if (!std::isfinite(v)) fail(key, "non-finite number");
        return v;
    }
    if (value.is_string()) {
        static const std::regex pattern(R"(^\s*([+-])?\s*([0-9]*\.?[0-9]+(?:[eE][+-]?[0-9]+)?)?\s*\*?\s*pi\s*(?:/\s*([0-9]*\.?[0-9]+))?\s*$)");
        std::smatch m;
        const std::string text = value.get<std::string>();
        if (std::regex_match(text, m, pattern)) {
            double v = std::numbers::pi;
            if (m[2].matched) v *= std::stod(m[2].str());
            if (m[3].matched) {
                const double d = std::stod(m[3].str());
                if (d == 0.0) fail(key, "division by zero in '" + text + "'");
                v /= d;
            }
            if (m[1].matched && m[1].str() == "-") v = -v;
            return v;
        }
        fail(key, "cannot read '" + text + "' as a number");
    }
    fail(key, "expected a number");
}

Config parse_config(const nlohmann::json& doc) {
    if (!doc.is_object()) throw ConfigError("config must be a JSON object");
    for (const auto& [key, _] : doc.items()) {
        if (!kKeys.contains(key)) fail(key, "unknown key");
    }
    Config c;
    c.source = nlohmann::ordered_json::parse(doc.dump());

    if (doc.contains("order")) {
        if (!doc["order"].is_number_integer()) fail("order", "expected 2 or 4");
        c.order = doc["order"].get<int>();
        if (c.order != 2 && c.order != 4) fail("order", "expected 2 or 4");
    }

    if (doc.contains("function")) {
        const auto& f = doc["function"];
        if (f.is_string()) {
            c.function = make_test_function(f.get<std::string>());
        } else if (f.is_object() && f.contains("samples")) {
            c.samples = real_list(f["samples"], "function.samples");
        } else if (f.is_object()) {
            c.function = function_from_object(f);
        } else {
            fail("function", "expected a name or an object");
        }
    }

    bool have_domain = false;
    if (doc.contains("domain")) {
        const auto d = real_tuple<2>(doc["domain"], "domain");
        c.a = d[0];
        c.b = d[1];
        if (!(c.a < c.b)) fail("domain", "needs a < b");
        have_domain = true;
    }

    if (doc.contains("knots") && doc.contains("n")) fail("knots", "give either 'knots' or 'n', not both");
    if (doc.contains("knots")) {
        auto knots = real_list(doc["knots"], "knots");
        if (knots.size() < 2) fail("knots", "needs at least two knots");
        try {
            c.grids.emplace_back(knots);
        } catch (const DomainError& e) {
            fail("knots", e.what());
        }
        if (have_domain && (knots.front() != c.a || knots.back() != c.b)) fail("knots", "must start and end at the domain");
        c.a = knots.front();
        c.b = knots.back();
    } else if (doc.contains("n")) {
        std::vector<int> ns;
        const auto& n = doc["n"];
        if (n.is_number_integer()) {
            ns.push_back(n.get<int>());
        } else if (n.is_array()) {
            for (const auto& e : n) {
                if (!e.is_number_integer()) fail("n", "expected integers");
                ns.push_back(e.get<int>());
            }
        } else {
            fail("n", "expected an integer or a list of integers");
        }
        if (ns.empty()) fail("n", "empty list");
        if (!have_domain) {
            if (c.function && c.function->domain()) {
                c.a = (*c.function->domain())[0];
                c.b = (*c.function->domain())[1];
            } else {
                fail("domain", "required with 'n'");
            }
        }
        for (int k : ns) {
            if (k < 2) fail("n", "every grid needs at least two knots");
            c.grids.push_back(Partition::uniform(c.a, c.b, k));
        }
    } else {
        fail("n", "give 'knots' or 'n'");
    }

    const nlohmann::json* freq = nullptr;
    nlohmann::json shorthand;
    if (doc.contains("frequencies")) {
        if (doc.contains("xi")) fail("xi", "give 'xi' or 'frequencies', not both");
        freq = &doc["frequencies"];
        if (!freq->is_object() || freq->size() != 1) fail("frequencies", "expected exactly one of xi, pairs, quads");
    } else if (doc.contains("xi")) {
        shorthand["xi"] = doc["xi"];
        freq = &shorthand;
    }
    if (freq != nullptr) {
        if (freq->contains("xi")) {
            const auto& x = (*freq)["xi"];
            c.kind = FrequencyKind::Xi;
            c.xi = x.is_array() ? real_list(x, "xi") : std::vector<double>{parse_real(x, "xi")};
            if (c.xi.empty()) fail("xi", "empty list");
        } else if (freq->contains("pairs")) {
            c.kind = FrequencyKind::Pairs;
            const auto& list = (*freq)["pairs"];
            if (!list.is_array() || list.empty()) fail("frequencies.pairs", "expected a non-empty list of pairs");
            for (const auto& e : list) {
                const auto pr = real_tuple<2>(e, "frequencies.pairs");
                c.pairs.push_back({std::min(pr[0], pr[1]), std::max(pr[0], pr[1])});
            }
        } else if (freq->contains("quads")) {
            c.kind = FrequencyKind::Quads;
            const auto& list = (*freq)["quads"];
            if (!list.is_array() || list.empty()) fail("frequencies.quads", "expected a non-empty list of quadruples");
            for (const auto& e : list) c.quads.push_back(real_tuple<4>(e, "frequencies.quads"));
            if (c.order == 2) fail("frequencies.quads", "quadruples need order 4");
        } else {
            fail("frequencies", "expected one of xi, pairs, quads");
        }
    }

    if (doc.contains("p")) c.p = parse_real(doc["p"], "p");

    if (doc.contains("clamp")) {
        const auto& cl = doc["clamp"];
        if (cl.is_string()) {
            if (cl.get<std::string>() != "exact") fail("clamp", "expected \"exact\" or [d_left, d_right]");
        } else {
            c.clamp = real_tuple<2>(cl, "clamp");
        }
    }
    if (c.samples) {
        if (c.grids.size() != 1) fail("function.samples", "samples need a single grid");
        if (static_cast<int>(c.samples->size()) != c.grids[0].size()) {
            std::ostringstream msg;
            msg << "has " << c.samples->size() << " values but the grid has " << c.grids[0].size() << " knots";
            fail("function.samples", msg.str());
        }
        if (c.order == 4 && !c.clamp) fail("clamp", "sampled data need explicit end derivatives");
    }

    if (doc.contains("dense_points")) {
        if (!doc["dense_points"].is_number_integer() || doc["dense_points"].get<int>() < 2) {
            fail("dense_points", "expected an integer >= 2");
        }
        c.dense_points = doc["dense_points"].get<int>();
    }

    // Interval counts must agree with per-interval frequency lists on every grid.
    for (const Partition& g : c.grids) {
        const int m = g.intervals();
        if (c.kind == FrequencyKind::Xi) broadcast(c.xi, m, "xi");
        if (c.kind == FrequencyKind::Pairs) broadcast(c.pairs, m, "frequencies.pairs");
        if (c.kind == FrequencyKind::Quads) broadcast(c.quads, m, "frequencies.quads");
    }
    return c;
}

Config load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("invalid JSON in '" + path + "': " + e.what());
    }
    return parse_config(doc);
}

std::vector<FrequencyPair> pairs_for(const Config& config, const Partition& grid) {
    const int m = grid.intervals();
    switch (config.kind) {
        case FrequencyKind::Xi: {
            std::vector<FrequencyPair> out;
            for (double x : broadcast(config.xi, m, "xi")) out.push_back({-std::abs(x), std::abs(x)});
            return out;
        }
        case FrequencyKind::Pairs:
            return broadcast(config.pairs, m, "frequencies.pairs");
        case FrequencyKind::Quads:
            break;
    }
    throw ConfigError("config key 'frequencies.quads': quadruples need order 4");
}

QuadFrequencySet quads_for(const Config& config, const Partition& grid, bool need_weight) {
    const int m = grid.intervals();
    switch (config.kind) {
        case FrequencyKind::Xi: {
            const auto xi = broadcast(config.xi, m, "xi");
            return QuadFrequencySet::symmetric(xi);
        }
        case FrequencyKind::Pairs: {
            const double p = config.p.value_or(0.0);
            std::vector<Quad> quads;
            for (const auto& pr : broadcast(config.pairs, m, "frequencies.pairs")) {
                quads.push_back({pr.l0, pr.l1, -p - pr.l0, -p - pr.l1});
            }
            return QuadFrequencySet(std::move(quads), p);
        }
        case FrequencyKind::Quads:
            break;
    }
    auto quads = broadcast(config.quads, m, "frequencies.quads");
    if (config.p) {
        try {
            return QuadFrequencySet(quads, *config.p);
        } catch (const DomainError&) {
            if (!need_weight) return QuadFrequencySet(quads);
        }
    } else {
        QuadFrequencySet as_given(quads);
        if (as_given.p() || !need_weight) return as_given;
    }
    try {
        return QuadFrequencySet::arranged(std::move(quads), config.p);
    } catch (const DomainError& e) {
        throw ConfigError(std::string("config key 'frequencies.quads': ") + e.what());
    }
}

double weight_exponent(const Config& config, const QuadFrequencySet* quads) {
    if (config.p) return *config.p;
    if (quads != nullptr && quads->p()) return *quads->p();
    return 0.0;
}

}  // namespace expspline
