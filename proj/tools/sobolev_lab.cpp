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

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>

int main(int argc, char** argv) {
    CLI::App app{"Sobolev-constant lab: gap, estimate, decay, pnorm, cone-test, dpi-test and suite runs"};
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::string out_dir;
    std::vector<std::string> checks;
    bool quiet = false;
    app.add_option("--config", config_path, "experiment config (JSON)")->required();
    app.add_option("--seed", seed, "overrides the config seed");
    app.add_option("--out", out_dir, "directory for the JSON report and CSV tables");
    app.add_option("--check", checks, "run only these suite checks (repeatable)");
    app.add_flag("--quiet", quiet, "no stdout");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : sobolev::kExitSchema;
    }

    sobolev::json config;
    {
        std::ifstream in(config_path);
        if (!in) {
            std::cerr << "cannot read " << config_path << "\n";
            return sobolev::kExitSchema;
        }
        try {
            in >> config;
        } catch (const sobolev::json::exception& e) {
            std::cerr << "schema error: " << config_path << " is not valid JSON (" << e.what() << ")\n";
            return sobolev::kExitSchema;
        }
    }

    auto res = sobolev::run_cli(config, seed, out_dir, checks);
    if (res.exit_code == sobolev::kExitSchema || res.exit_code == sobolev::kExitNumerical)
        std::cerr << res.summary;
    else if (!quiet)
        std::cout << res.summary;
    return res.exit_code;
}
