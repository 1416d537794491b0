// Copyright 2026 The sobolev-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sobolev/experiment.hpp"

#include "sobolev/expectation.hpp"
#include "sobolev/kernel.hpp"
#include "sobolev/models.hpp"
#include "sobolev/rng.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <unistd.h>

namespace sobolev {

namespace fs = std::filesystem;

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 12);
    return std::string(buf, res.ptr);
}

double round12(double x) {
    if (!std::isfinite(x)) return x;
    const std::string s = format_double(x);
    double out = 0.0;
    std::from_chars(s.data(), s.data() + s.size(), out);
    return out;
}

namespace {

// Non-finite values have no JSON literal; they become null.
json num(double x) { return std::isfinite(x) ? json(round12(x)) : json(nullptr); }

void require_object(const json& j, const std::string& where) {
    if (!j.is_object()) throw SchemaError(where + ": expected an object");
}

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key())) throw SchemaError(where + ": unknown key '" + it.key() + "'");
}

const json& need(const json& j, const std::string& key, const std::string& where) {
    if (!j.contains(key)) throw SchemaError(where + ": missing key '" + key + "'");
    return j.at(key);
}

long long get_int(const json& v, const std::string& what) {
    if (!v.is_number_integer()) throw SchemaError(what + ": expected an integer");
    return v.get<long long>();
}

double get_num(const json& v, const std::string& what) {
    if (!v.is_number()) throw SchemaError(what + ": expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw SchemaError(what + ": expected a finite number");
    return x;
}

std::vector<double> get_num_list(const json& v, const std::string& what) {
    if (!v.is_array()) throw SchemaError(what + ": expected an array");
    std::vector<double> out;
    for (const auto& e : v) out.push_back(get_num(e, what));
    return out;
}

std::vector<int> get_int_list(const json& v, const std::string& what) {
    if (!v.is_array()) throw SchemaError(what + ": expected an array");
    std::vector<int> out;
    for (const auto& e : v) out.push_back(static_cast<int>(get_int(e, what)));
    return out;
}

std::vector<std::vector<int>> get_int_lists(const json& v, const std::string& what) {
    if (!v.is_array()) throw SchemaError(what + ": expected an array of arrays");
    std::vector<std::vector<int>> out;
    for (const auto& e : v) out.push_back(get_int_list(e, what));
    return out;
}

std::uint64_t get_seed(const json& v, const std::string& what) {
    if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() && v.get<long long>() < 0))
        throw SchemaError(what + ": expected a nonnegative integer");
    return v.get<std::uint64_t>();
}

const std::map<std::string, std::set<std::string>> kModelParams{
    {"random_transposition", {"n"}},
    {"bernoulli_laplace", {"n", "r"}},
    {"depolarizing", {"dims", "weights", "expectation"}},
    {"graph", {"weights", "mu"}},
    {"tensor", {"factors"}},
};

json canonical_expectation(const json& e, std::size_t n_sites) {
    const std::string where = "expectation";
    json src = e.is_string() ? json{{"type", e}} : e;
    require_object(src, where);
    const std::string type = need(src, "type", where).is_string() ? src.at("type").get<std::string>() : "";
    if (type == "full_trace" || type == "center" || type == "identity") {
        check_keys(src, {"type"}, where);
        return {{"type", type}};
    }
    if (type == "partition") {
        check_keys(src, {"type", "groups", "trace_blocks"}, where);
        json out{{"type", type}, {"groups", get_int_lists(need(src, "groups", where), "expectation.groups")}};
        bool tb = false;
        if (src.contains("trace_blocks")) {
            if (!src.at("trace_blocks").is_boolean()) throw SchemaError("expectation.trace_blocks: expected a boolean");
            tb = src.at("trace_blocks").get<bool>();
        }
        out["trace_blocks"] = tb;
        return out;
    }
    if (type == "pinching") {
        check_keys(src, {"type", "sizes"}, where);
        auto sizes = get_int_lists(need(src, "sizes", where), "expectation.sizes");
        if (sizes.size() != n_sites) throw SchemaError("expectation.sizes: one list per site expected");
        return {{"type", type}, {"sizes", sizes}};
    }
    throw SchemaError("expectation.type: expected full_trace, center, identity, partition or pinching");
}

}  // namespace

json canonical_model_spec(const json& spec) {
    const std::string where = "model";
    require_object(spec, where);
    const json& m = need(spec, "model", where);
    if (!m.is_string()) throw SchemaError("model.model: expected a string");
    const std::string model = m.get<std::string>();
    auto known = kModelParams.find(model);
    if (known == kModelParams.end()) throw SchemaError("model.model: unknown model '" + model + "'");

    json params = json::object();
    bool inline_params = false;
    for (auto it = spec.begin(); it != spec.end(); ++it) {
        const std::string& key = it.key();
        if (key == "model" || key == "matrix_dim") continue;
        if (key == "params") {
            require_object(it.value(), "model.params");
            for (auto p = it.value().begin(); p != it.value().end(); ++p) params[p.key()] = p.value();
        } else if (known->second.count(key)) {
            params[key] = it.value();
            inline_params = true;
        } else {
            throw SchemaError(where + ": unknown key '" + key + "'");
        }
    }
    if (inline_params && spec.contains("params"))
        throw SchemaError(where + ": parameters given both inline and under 'params'");
    check_keys(params, known->second, "model.params");

    int k = 1;
    if (spec.contains("matrix_dim")) k = static_cast<int>(get_int(spec.at("matrix_dim"), "model.matrix_dim"));
    if (k < 1) throw SchemaError("model.matrix_dim: must be >= 1");

    json out_params = json::object();
    if (model == "random_transposition") {
        out_params["n"] = get_int(need(params, "n", "model.params"), "model.params.n");
    } else if (model == "bernoulli_laplace") {
        out_params["n"] = get_int(need(params, "n", "model.params"), "model.params.n");
        out_params["r"] = get_int(need(params, "r", "model.params"), "model.params.r");
    } else if (model == "depolarizing") {
        auto dims = get_int_list(need(params, "dims", "model.params"), "model.params.dims");
        if (dims.empty()) throw SchemaError("model.params.dims: empty");
        std::vector<double> w(dims.size(), 1.0 / dims.size());
        if (params.contains("weights")) w = get_num_list(params.at("weights"), "model.params.weights");
        if (w.size() != dims.size()) throw SchemaError("model.params.weights: one weight per site expected");
        out_params["dims"] = dims;
        json wj = json::array();
        for (double x : w) wj.push_back(round12(x));
        out_params["weights"] = wj;
        out_params["expectation"] =
            canonical_expectation(params.contains("expectation") ? params.at("expectation") : json("full_trace"),
                                  dims.size());
    } else if (model == "graph") {
        const json& wj = need(params, "weights", "model.params");
        if (!wj.is_array() || wj.empty()) throw SchemaError("model.params.weights: expected a square matrix");
        const std::size_t n = wj.size();
        json rows = json::array();
        for (const auto& row : wj) {
            auto r = get_num_list(row, "model.params.weights");
            if (r.size() != n) throw SchemaError("model.params.weights: expected a square matrix");
            json rj = json::array();
            for (double x : r) rj.push_back(round12(x));
            rows.push_back(rj);
        }
        out_params["weights"] = rows;
        std::vector<double> mu(n, 1.0 / n);
        if (params.contains("mu")) mu = get_num_list(params.at("mu"), "model.params.mu");
        if (mu.size() != n) throw SchemaError("model.params.mu: one weight per vertex expected");
        json mj = json::array();
        for (double x : mu) mj.push_back(round12(x));
        out_params["mu"] = mj;
    } else {  // tensor
        const json& f = need(params, "factors", "model.params");
        if (!f.is_array() || f.size() != 2) throw SchemaError("model.params.factors: expected two model specs");
        out_params["factors"] = json::array({canonical_model_spec(f[0]), canonical_model_spec(f[1])});
    }
    return {{"model", model}, {"params", out_params}, {"matrix_dim", k}};
}

Generator build_model(const json& spec) {
    const json c = canonical_model_spec(spec);
    const std::string model = c.at("model");
    const json& p = c.at("params");
    const int k = c.at("matrix_dim");
    if (model == "random_transposition") return random_transposition(p.at("n"), k);
    if (model == "bernoulli_laplace") return bernoulli_laplace(p.at("n"), p.at("r"), k);
    if (model == "graph") {
        const std::size_t n = p.at("weights").size();
        Eigen::MatrixXd w(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) w(i, j) = p.at("weights")[i][j].get<double>();
        return graph_laplacian(w, p.at("mu").get<std::vector<double>>(), k);
    }
    if (model == "tensor") return ampliate_generator(tensor_generator(build_model(p.at("factors")[0]),
                                                                      build_model(p.at("factors")[1])),
                                                     k);
    // depolarizing
    auto dims = p.at("dims").get<std::vector<int>>();
    std::vector<Site> sites;
    for (std::size_t i = 0; i < dims.size(); ++i) sites.push_back({"s" + std::to_string(i), dims[i]});
    auto alg = make_algebra(sites, p.at("weights").get<std::vector<double>>());
    const json& e = p.at("expectation");
    const std::string type = e.at("type");
    auto make = [&]() -> ConditionalExpectation {
        if (type == "full_trace") return full_trace(alg);
        if (type == "center") return center(alg);
        if (type == "identity") return identity_expectation(alg);
        if (type == "partition")
            return partition_average(alg, e.at("groups").get<std::vector<std::vector<int>>>(),
                                     e.at("trace_blocks").get<bool>());
        return pinching(alg, e.at("sizes").get<std::vector<std::vector<int>>>());
    };
    return ampliate_generator(depolarizing(make()), k);
}

json canonical_function_spec(const json& spec) {
    json src = spec.is_string() ? json{{"tag", spec}} : spec;
    require_object(src, "f");
    const json& t = need(src, "tag", "f");
    if (!t.is_string()) throw SchemaError("f.tag: expected a string");
    const std::string tag = t.get<std::string>();
    if (tag == "xlogx" || tag == "log") {
        check_keys(src, {"tag"}, "f");
        return {{"tag", tag}};
    }
    if (tag == "power") {
        check_keys(src, {"tag", "p"}, "f");
        const double p = get_num(need(src, "p", "f"), "f.p");
        if (!(p > 0)) throw SchemaError("f.p: must be positive");
        return {{"tag", tag}, {"p", round12(p)}};
    }
    throw SchemaError("f.tag: expected xlogx, power or log");
}

ScalarFunction build_function(const json& spec) {
    const json c = canonical_function_spec(spec);
    const std::string tag = c.at("tag");
    if (tag == "xlogx") return ScalarFunction::xlogx();
    if (tag == "log") return ScalarFunction::log();
    return ScalarFunction::power(c.at("p").get<double>());
}

json canonical_kernel_spec(const json& spec) {
    json src = spec.is_string() ? json{{"type", spec}} : spec;
    require_object(src, "kernel");
    const json& t = need(src, "type", "kernel");
    if (!t.is_string()) throw SchemaError("kernel.type: expected a string");
    const std::string type = t.get<std::string>();
    if (type == "log") {
        check_keys(src, {"type"}, "kernel");
        return {{"type", type}};
    }
    if (type == "power") {
        check_keys(src, {"type", "p"}, "kernel");
        return {{"type", type}, {"p", round12(get_num(need(src, "p", "kernel"), "kernel.p"))}};
    }
    if (type == "constant") {
        check_keys(src, {"type", "c"}, "kernel");
        return {{"type", type}, {"c", round12(get_num(need(src, "c", "kernel"), "kernel.c"))}};
    }
    if (type == "diff_quot") {
        check_keys(src, {"type", "f", "order"}, "kernel");
        const long long order = get_int(need(src, "order", "kernel"), "kernel.order");
        if (order != 1 && order != 2) throw SchemaError("kernel.order: expected 1 or 2");
        return {{"type", type}, {"f", canonical_function_spec(need(src, "f", "kernel"))}, {"order", order}};
    }
    if (type == "perspective") {
        check_keys(src, {"type", "f"}, "kernel");
        return {{"type", type}, {"f", canonical_function_spec(need(src, "f", "kernel"))}};
    }
    if (type == "inverse") {
        check_keys(src, {"type", "of"}, "kernel");
        return {{"type", type}, {"of", canonical_kernel_spec(need(src, "of", "kernel"))}};
    }
    if (type == "translated") {
        check_keys(src, {"type", "of", "t", "s"}, "kernel");
        return {{"type", type},
                {"of", canonical_kernel_spec(need(src, "of", "kernel"))},
                {"t", round12(get_num(need(src, "t", "kernel"), "kernel.t"))},
                {"s", round12(get_num(need(src, "s", "kernel"), "kernel.s"))}};
    }
    if (type == "sum" || type == "product") {
        check_keys(src, {"type", "a", "b"}, "kernel");
        return {{"type", type},
                {"a", canonical_kernel_spec(need(src, "a", "kernel"))},
                {"b", canonical_kernel_spec(need(src, "b", "kernel"))}};
    }
    throw SchemaError("kernel.type: unknown kernel type '" + type + "'");
}

Kernel build_kernel(const json& spec) {
    const json c = canonical_kernel_spec(spec);
    const std::string type = c.at("type");
    if (type == "log") return log_kernel();
    if (type == "power") return power_kernel(c.at("p").get<double>());
    if (type == "constant") return Kernel::constant(c.at("c").get<double>());
    if (type == "diff_quot") return Kernel::diff_quot(build_function(c.at("f")), c.at("order").get<int>());
    if (type == "perspective") return Kernel::perspective(build_function(c.at("f")));
    if (type == "inverse") return Kernel::inverse(build_kernel(c.at("of")));
    if (type == "translated")
        return Kernel::translated(build_kernel(c.at("of")), c.at("t").get<double>(), c.at("s").get<double>());
    if (type == "sum") return Kernel::sum(build_kernel(c.at("a")), build_kernel(c.at("b")));
    return Kernel::product(build_kernel(c.at("a")), build_kernel(c.at("b")));
}

json to_json(const CheckReport& r) {
    json recs = json::array();
    for (const auto& x : r.records)
        recs.push_back({{"seed", x.seed},
                        {"t", num(x.t)},
                        {"tag", x.tag},
                        {"value", num(x.value)},
                        {"slack", num(x.slack)},
                        {"allowed", num(x.allowed)}});
    return {{"id", r.id},
            {"model", r.model},
            {"f", r.f},
            {"p", num(r.p)},
            {"k", r.k},
            {"trials", r.trials},
            {"tolerance", {{"abs", num(r.tolerance.abs)}, {"rel", num(r.tolerance.rel)}}},
            {"informational", r.informational},
            {"worst_slack", num(r.worst_slack)},
            {"worst_margin", num(r.worst_margin)},
            {"violations", r.violations},
            {"verdict", to_string(r.verdict)},
            {"note", r.note},
            {"records", recs}};
}

json to_json(const AlgebraElement& x) {
    json sites = json::array();
    json blocks = json::array();
    const auto& alg = *x.algebra();
    for (std::size_t s = 0; s < alg.num_sites(); ++s) {
        sites.push_back({{"label", alg.sites()[s].label}, {"dim", alg.dim(s)}, {"weight", num(alg.weight(s))}});
        json b = json::array();
        const Matrix& m = x.block(s);
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            for (Eigen::Index j = 0; j < m.cols(); ++j) b.push_back({num(m(i, j).real()), num(m(i, j).imag())});
        blocks.push_back(b);
    }
    return {{"sites", sites}, {"blocks", blocks}};
}

json to_json(const CertificationResult& r) {
    json restart_best = json::array();
    for (double v : r.restart_best) restart_best.push_back(num(v));
    json bracket = nullptr;
    if (r.bracket) bracket = json::array({num(r.bracket->first), num(r.bracket->second)});
    return {{"model", r.model},
            {"f", r.f},
            {"k", r.k},
            {"estimate", num(r.estimate)},
            {"restarts", r.restarts},
            {"samples", r.samples},
            {"rejected", r.rejected},
            {"restart_best", restart_best},
            {"bracket", bracket},
            {"witness", to_json(r.witness)}};
}

json to_json(const ConeTestReport& r) {
    json viol = json::array();
    for (const auto& v : r.violations)
        viol.push_back({{"seed", v.seed}, {"dim", v.dim}, {"env_dim", v.env_dim}, {"min_eig", num(v.min_eig)}});
    return {{"kernel", r.kernel},
            {"side", to_string(r.side)},
            {"trials", r.trials},
            {"dims", r.dims},
            {"env_dims", r.env_dims},
            {"unital_only", r.unital_only},
            {"min_eig", num(r.min_eig)},
            {"min_relative_eig", num(r.min_relative_eig)},
            {"breakdowns", r.breakdowns},
            {"violations", viol},
            {"verdict", to_string(r.verdict)}};
}

json to_json(const EntropyValue& v) { return {{"f", v.f}, {"value", num(v.value)}, {"epsilon", num(v.epsilon)}}; }

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

}  // namespace

std::string to_csv(const std::vector<CheckReport>& reports) {
    std::ostringstream os;
    os << kCsvHeader << "\n";
    for (const auto& r : reports)
        for (const auto& x : r.records) {
            const char* verdict = r.informational ? "informational" : (!(x.slack + x.allowed >= 0) ? "fail" : "pass");
            os << csv_field(r.id) << "," << csv_field(r.model) << "," << csv_field(r.f) << ","
               << (r.p > 0 ? format_double(r.p) : "") << "," << r.k << "," << x.seed << ","
               << format_double(x.value) << "," << format_double(x.slack) << "," << verdict << "\n";
        }
    return os.str();
}

void write_atomic(const std::string& path, const std::string& content) {
    fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    fs::path tmp = target;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << content;
        out.flush();
        if (!out) throw std::runtime_error("write failed: " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp);
        throw std::runtime_error("cannot rename onto " + target.string() + ": " + ec.message());
    }
}

std::string decay_curve_csv(const Generator& a, const ScalarFunction& f, const AlgebraElement& rho,
                            const std::vector<double>& t_grid, double lambda) {
    if (t_grid.empty()) throw ContractError("decay curve: empty t grid");
    std::ostringstream os;
    os << "t,entropy,bound_e_minus_lambda_t\n";
    const auto& e = a.fixed_point_expectation();
    double d0 = 0;
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        const double d = entropy_vs_subalgebra(f, semigroup_apply(a, t_grid[i], rho).hermitian_part(), e).value;
        if (i == 0) d0 = d;
        const double bound = std::exp(-lambda * (t_grid[i] - t_grid[0])) * d0;
        os << format_double(t_grid[i]) << "," << format_double(d) << "," << format_double(bound) << "\n";
    }
    return os.str();
}

void emit_decay_curve(const Generator& a, const ScalarFunction& f, const AlgebraElement& rho,
                      const std::vector<double>& t_grid, double lambda, const std::string& path) {
    write_atomic(path, decay_curve_csv(a, f, rho, t_grid, lambda));
}

// ---- config --------------------------------------------------------------

namespace {

const std::set<std::string> kCommands{"gap", "estimate", "decay", "pnorm", "cone-test", "dpi-test", "suite"};

Tolerance parse_tolerance(const json& j, const std::string& where) {
    require_object(j, where);
    check_keys(j, {"abs", "rel"}, where);
    Tolerance t;
    if (j.contains("abs")) t.abs = get_num(j.at("abs"), where + ".abs");
    if (j.contains("rel")) t.rel = get_num(j.at("rel"), where + ".rel");
    if (t.abs < 0 || t.rel < 0) throw SchemaError(where + ": tolerances must be nonnegative");
    return t;
}

json canonical_cone(const json& j) {
    require_object(j, "cone");
    check_keys(j, {"kernel", "side", "dims", "env_dims", "unital_only"}, "cone");
    json out;
    out["kernel"] = canonical_kernel_spec(need(j, "kernel", "cone"));
    std::string side = "plus";
    if (j.contains("side")) {
        if (!j.at("side").is_string()) throw SchemaError("cone.side: expected plus or minus");
        side = j.at("side").get<std::string>();
    }
    if (side != "plus" && side != "minus") throw SchemaError("cone.side: expected plus or minus");
    out["side"] = side;
    ConeTestOptions def;
    out["dims"] = j.contains("dims") ? get_int_list(j.at("dims"), "cone.dims") : def.dims;
    out["env_dims"] = j.contains("env_dims") ? get_int_list(j.at("env_dims"), "cone.env_dims") : def.env_dims;
    for (int d : out["dims"].get<std::vector<int>>())
        if (d < 2) throw SchemaError("cone.dims: entries must be >= 2");
    for (int d : out["env_dims"].get<std::vector<int>>())
        if (d < 1) throw SchemaError("cone.env_dims: entries must be >= 1");
    bool unital = false;
    if (j.contains("unital_only")) {
        if (!j.at("unital_only").is_boolean()) throw SchemaError("cone.unital_only: expected a boolean");
        unital = j.at("unital_only").get<bool>();
    }
    out["unital_only"] = unital;
    return out;
}

}  // namespace

ExperimentConfig parse_config(const json& j) {
    require_object(j, "config");
    check_keys(j,
               {"command", "model", "f", "k", "budget", "seed", "t_grid", "lambda", "p", "trials", "checks",
                "tolerances", "check_trials", "cone", "unrestricted", "output"},
               "config");
    ExperimentConfig c;
    const json& cmd = need(j, "command", "config");
    if (!cmd.is_string() || !kCommands.count(cmd.get<std::string>()))
        throw SchemaError("config.command: expected one of gap, estimate, decay, pnorm, cone-test, dpi-test, suite");
    c.command = cmd.get<std::string>();

    const bool needs_model = c.command == "gap" || c.command == "estimate" || c.command == "decay" ||
                             c.command == "pnorm";
    if (j.contains("model")) c.model = canonical_model_spec(j.at("model"));
    else if (needs_model) throw SchemaError("config: command '" + c.command + "' needs a model");

    if (j.contains("f")) c.f = canonical_function_spec(j.at("f"));
    else if (c.command == "estimate" || c.command == "decay") throw SchemaError("config: command needs f");

    if (j.contains("k")) c.k = static_cast<int>(get_int(j.at("k"), "config.k"));
    if (c.k < 1) throw SchemaError("config.k: must be >= 1");
    if (j.contains("budget")) {
        const json& b = j.at("budget");
        require_object(b, "budget");
        check_keys(b, {"restarts", "iters"}, "budget");
        if (b.contains("restarts")) c.budget.restarts = static_cast<int>(get_int(b.at("restarts"), "budget.restarts"));
        if (b.contains("iters")) c.budget.iters = static_cast<int>(get_int(b.at("iters"), "budget.iters"));
        if (c.budget.restarts < 1 || c.budget.iters < 1) throw SchemaError("budget: values must be >= 1");
    }
    if (j.contains("seed")) c.seed = get_seed(j.at("seed"), "config.seed");
    c.t_grid = j.contains("t_grid") ? get_num_list(j.at("t_grid"), "config.t_grid") : default_t_grid();
    for (std::size_t i = 0; i < c.t_grid.size(); ++i) {
        if (c.t_grid[i] < 0) throw SchemaError("config.t_grid: times must be >= 0");
        if (i > 0 && c.t_grid[i] <= c.t_grid[i - 1]) throw SchemaError("config.t_grid: must be increasing");
    }
    if (c.t_grid.empty()) throw SchemaError("config.t_grid: empty");
    if (j.contains("lambda")) {
        c.lambda = get_num(j.at("lambda"), "config.lambda");
        if (!(*c.lambda > 0)) throw SchemaError("config.lambda: must be positive");
    }
    if (j.contains("p")) {
        c.p = get_num(j.at("p"), "config.p");
        if (!(*c.p > 1 && *c.p < 2)) throw SchemaError("config.p: must lie in (1, 2)");
    } else if (c.command == "pnorm") {
        throw SchemaError("config: command 'pnorm' needs p");
    }
    if (j.contains("trials")) c.trials = static_cast<int>(get_int(j.at("trials"), "config.trials"));
    if (c.trials < 0) throw SchemaError("config.trials: must be >= 0");
    if (j.contains("checks")) {
        if (!j.at("checks").is_array()) throw SchemaError("config.checks: expected an array of ids");
        std::vector<std::string> ids;
        for (const auto& e : j.at("checks")) {
            if (!e.is_string()) throw SchemaError("config.checks: expected an array of ids");
            ids.push_back(e.get<std::string>());
        }
        c.checks = ids;
    }
    auto known_id = [](const std::string& id) {
        for (const auto& s : check_registry())
            if (s.id == id) return true;
        return id == "decay" || id == "pnorm";
    };
    if (c.checks)
        for (const auto& id : *c.checks)
            if (!known_id(id)) throw SchemaError("config.checks: unknown check id '" + id + "'");
    if (j.contains("tolerances")) {
        require_object(j.at("tolerances"), "tolerances");
        for (auto it = j.at("tolerances").begin(); it != j.at("tolerances").end(); ++it) {
            if (!known_id(it.key())) throw SchemaError("tolerances: unknown check id '" + it.key() + "'");
            c.tolerances[it.key()] = parse_tolerance(it.value(), "tolerances." + it.key());
        }
    }
    if (j.contains("check_trials")) {
        require_object(j.at("check_trials"), "check_trials");
        for (auto it = j.at("check_trials").begin(); it != j.at("check_trials").end(); ++it) {
            if (!known_id(it.key())) throw SchemaError("check_trials: unknown check id '" + it.key() + "'");
            const long long n = get_int(it.value(), "check_trials." + it.key());
            if (n < 1) throw SchemaError("check_trials: counts must be >= 1");
            c.check_trials[it.key()] = static_cast<int>(n);
        }
    }
    if (j.contains("cone")) c.cone = canonical_cone(j.at("cone"));
    else if (c.command == "cone-test") throw SchemaError("config: command 'cone-test' needs cone.kernel");
    if (j.contains("unrestricted")) {
        if (!j.at("unrestricted").is_boolean()) throw SchemaError("config.unrestricted: expected a boolean");
        c.unrestricted = j.at("unrestricted").get<bool>();
    }
    if (j.contains("output")) {
        const json& o = j.at("output");
        require_object(o, "output");
        check_keys(o, {"json", "csv", "curve"}, "output");
        auto name = [&](const char* key, std::string& dst) {
            if (!o.contains(key)) return;
            if (!o.at(key).is_string() || o.at(key).get<std::string>().empty())
                throw SchemaError(std::string("output.") + key + ": expected a file name");
            dst = o.at(key).get<std::string>();
        };
        name("json", c.json_name);
        name("csv", c.csv_name);
        name("curve", c.curve_name);
    }
    return c;
}

json ExperimentConfig::to_json() const {
    json j{{"command", command}, {"k", k}, {"seed", seed}};
    if (!model.is_null()) j["model"] = model;
    if (!f.is_null()) j["f"] = f;
    j["budget"] = {{"restarts", budget.restarts}, {"iters", budget.iters}};
    json tg = json::array();
    for (double t : t_grid) tg.push_back(num(t));
    j["t_grid"] = tg;
    if (lambda) j["lambda"] = num(*lambda);
    if (p) j["p"] = num(*p);
    j["trials"] = trials;
    if (checks) j["checks"] = *checks;
    json tol = json::object();
    for (const auto& [id, t] : tolerances) tol[id] = {{"abs", num(t.abs)}, {"rel", num(t.rel)}};
    j["tolerances"] = tol;
    json ct = json::object();
    for (const auto& [id, n] : check_trials) ct[id] = n;
    j["check_trials"] = ct;
    if (!cone.is_null()) j["cone"] = cone;
    j["unrestricted"] = unrestricted;
    j["output"] = {{"json", json_name}, {"csv", csv_name}, {"curve", curve_name}};
    return j;
}

// ---- run -----------------------------------------------------------------

namespace {

std::string fixed9(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::fixed, 9);
    return std::string(buf, res.ptr);
}

Tolerance tol_for(const ExperimentConfig& c, const std::string& id, Tolerance def) {
    auto it = c.tolerances.find(id);
    return it == c.tolerances.end() ? def : it->second;
}

// Default decay rate: the known lower bound for the model (halved for the
// p-norm statement).
double default_lambda(const Generator& a, const ScalarFunction& f, const char* what) {
    auto b = paper_bracket(a, f);
    if (!b) throw SchemaError(std::string("config: no known constant for this model, set lambda for ") + what);
    return b->first;
}

std::string summarize(const std::vector<CheckReport>& reports) {
    std::ostringstream os;
    for (const auto& r : reports)
        os << r.id << " " << to_string(r.verdict) << " trials=" << r.trials << " worst_slack="
           << format_double(r.worst_slack) << " violations=" << r.violations << "\n";
    return os.str();
}

int exit_for(Verdict v) { return v == Verdict::Fail ? kExitFail : kExitPass; }

}  // namespace

RunResult run_experiment(const ExperimentConfig& c) {
    RunResult out;
    out.report = {{"command", c.command}, {"config", c.to_json()}};
    std::vector<CheckReport> reports;

    if (c.command == "gap") {
        Generator g = ampliate_generator(build_model(c.model), c.k);
        const double gap = spectral_gap(g);
        out.verdict = Verdict::Informational;
        out.report["model"] = describe_model(g);
        out.report["gap"] = num(gap);
        CheckReport r;
        r.id = "gap";
        r.model = describe_model(g);
        r.k = g.info().k;
        r.informational = true;
        r.trials = 1;
        r.records.push_back({c.seed, 0.0, "", gap, 0.0, 0.0});
        r.finalize();
        reports.push_back(r);
        out.summary = fixed9(gap) + "\n";
    } else if (c.command == "estimate") {
        Generator g = build_model(c.model);
        const auto f = build_function(c.f);
        Budget b = c.budget;
        b.seed = c.seed;
        auto res = estimate_constant(g, f, c.k, b);
        out.report["result"] = to_json(res);
        CheckReport r;
        r.id = "estimate";
        r.model = res.model;
        r.f = res.f;
        r.p = f.exponent();
        r.k = c.k;
        r.trials = res.restarts;
        r.tolerance = tol_for(c, "brackets-rt", {1e-6, 0.0});
        const double rej = res.samples > 0 ? double(res.rejected) / double(res.samples) : 0.0;
        if (res.bracket) {
            r.add(c.seed, 0, res.estimate, res.estimate - res.bracket->first, 0, "lower");
            if (std::isfinite(res.bracket->second))
                r.add(c.seed, 0, res.estimate, res.bracket->second - res.estimate, 0, "upper");
            r.records.push_back({c.seed, 0, "rejects", rej, 0.01 - rej, 0.0});
        } else {
            r.informational = true;
            r.add(c.seed, 0, res.estimate, 0.0, 0, "estimate");
        }
        r.finalize();
        reports.push_back(r);
        out.verdict = r.verdict;
        std::ostringstream os;
        os << "estimate " << format_double(res.estimate) << " (" << res.model << ", " << res.f
           << ", samples=" << res.samples << ", rejected=" << res.rejected << ")";
        if (res.bracket)
            os << " bracket [" << format_double(res.bracket->first) << ", " << format_double(res.bracket->second)
               << "]";
        os << " " << to_string(r.verdict) << "\n";
        out.summary = os.str();
    } else if (c.command == "decay" || c.command == "pnorm") {
        const bool pn = c.command == "pnorm";
        Generator g = ampliate_generator(build_model(c.model), c.k);
        const auto f = pn ? ScalarFunction::power(*c.p) : build_function(c.f);
        const double lambda = c.lambda ? *c.lambda : default_lambda(g, f, c.command.c_str()) * (pn ? 0.5 : 1.0);
        const int states = c.trials > 0 ? c.trials : 1;
        const Tolerance tol = tol_for(c, c.command, {0.0, 1e-9});
        CheckReport merged;
        const Rng root(c.seed);
        for (int i = 0; i < states; ++i) {
            const std::uint64_t s = root.split(i).seed();
            auto rho = random_state(g.algebra(), s);
            auto r = pn ? pnorm_decay_check(g, *c.p, lambda, rho, c.t_grid, tol)
                        : decay_check(g, f, lambda, rho, c.t_grid, tol);
            for (auto& rec : r.records) rec.seed = s;
            if (i == 0) {
                merged = r;
                if (!pn) out.curve_csv = decay_curve_csv(g, f, rho, c.t_grid, lambda);
            } else {
                merged.merge(r);
            }
        }
        merged.finalize();
        reports.push_back(merged);
        out.verdict = merged.verdict;
        out.report["lambda"] = num(lambda);
        out.summary = summarize(reports);
    } else if (c.command == "cone-test") {
        ConeTestOptions opt;
        opt.trials = c.trials > 0 ? c.trials : 500;
        opt.seed = c.seed;
        opt.dims = c.cone.at("dims").get<std::vector<int>>();
        opt.env_dims = c.cone.at("env_dims").get<std::vector<int>>();
        opt.unital_only = c.cone.at("unital_only").get<bool>();
        Kernel k = build_kernel(c.cone.at("kernel"));
        auto side = c.cone.at("side") == "plus" ? ConeSide::Plus : ConeSide::Minus;
        auto r = cone_test(k, side, opt);
        out.report["result"] = to_json(r);
        CheckReport cr;
        cr.id = "cone-test";
        cr.model = r.kernel;
        cr.trials = r.trials;
        cr.tolerance = {1e-8, 0.0};
        cr.records.push_back({c.seed, 0, to_string(side), r.min_eig, r.min_relative_eig, 1e-8});
        cr.finalize();
        reports.push_back(cr);
        out.verdict = r.verdict == Verdict::Inconclusive ? Verdict::Inconclusive : cr.verdict;
        out.summary = "cone-test " + r.kernel + " " + to_string(side) + " min_eig=" + format_double(r.min_eig) +
                      " violations=" + std::to_string(r.violations.size()) + " " + to_string(out.verdict) + "\n";
    } else if (c.command == "dpi-test") {
        const std::string id = c.unrestricted ? "dpi-unrestricted" : "dpi";
        CheckOptions o;
        o.seed = c.seed;
        o.trials = c.trials;
        if (auto it = c.tolerances.find(id); it != c.tolerances.end()) o.tolerance = it->second;
        reports.push_back(run_check(id, o));
        out.verdict = aggregate_verdict(reports);
        if (reports.back().informational) out.verdict = Verdict::Informational;
        out.summary = summarize(reports);
    } else {  // suite
        SuiteConfig sc;
        sc.seed = c.seed;
        sc.checks = c.checks ? *c.checks : default_check_ids();
        for (const auto& id : sc.checks)
            if (id == "decay" || id == "pnorm") throw SchemaError("suite: '" + id + "' is a command, not a check");
        for (const auto& [id, t] : c.tolerances) sc.overrides[id].tolerance = t;
        for (const auto& [id, n] : c.check_trials) sc.overrides[id].trials = n;
        reports = suite_run(sc);
        out.verdict = aggregate_verdict(reports);
        out.summary = summarize(reports);
    }

    json reps = json::array();
    for (const auto& r : reports) reps.push_back(to_json(r));
    out.report["checks"] = reps;
    out.report["verdict"] = to_string(out.verdict);
    out.csv = to_csv(reports);
    out.exit_code = exit_for(out.verdict);
    return out;
}

RunResult run_cli(const json& config, std::optional<std::uint64_t> seed_override, const std::string& out_dir,
                  const std::vector<std::string>& check_filter) {
    RunResult res;
    ExperimentConfig cfg;
    try {
        cfg = parse_config(config);
        if (seed_override) cfg.seed = *seed_override;
        if (!check_filter.empty()) {
            if (cfg.command != "suite") throw SchemaError("--check only applies to the suite command");
            for (const auto& id : check_filter) find_check(id);
            cfg.checks = check_filter;
        }
        res = run_experiment(cfg);
    } catch (const SchemaError& e) {
        res.exit_code = kExitSchema;
        res.summary = std::string("schema error: ") + e.what() + "\n";
        return res;
    } catch (const ContractError& e) {
        res.exit_code = kExitSchema;
        res.summary = std::string("invalid input: ") + e.what() + "\n";
        return res;
    } catch (const DomainError& e) {
        res.exit_code = kExitNumerical;
        res.summary = std::string("numerical failure: ") + e.what() + "\n";
        return res;
    } catch (const NumericalError& e) {
        res.exit_code = kExitNumerical;
        res.summary = std::string("numerical failure: ") + e.what() + "\n";
        return res;
    }
    if (!out_dir.empty()) {
        try {
            const fs::path dir(out_dir);
            write_atomic((dir / cfg.json_name).string(), res.report.dump(2) + "\n");
            write_atomic((dir / cfg.csv_name).string(), res.csv);
            if (!res.curve_csv.empty()) write_atomic((dir / cfg.curve_name).string(), res.curve_csv);
        } catch (const std::exception& e) {
            res.exit_code = kExitSchema;
            res.summary += std::string("output error: ") + e.what() + "\n";
        }
    }
    return res;
}

}  // namespace sobolev
