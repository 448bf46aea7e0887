// SPDX-License-Identifier: Apache-2.0
//
// srris: successive relaying with reconfigurable intelligent surfaces
// Copyright (C) 2026 The srris authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

// Command-line front end. Everything goes through the C API in srris.h.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "srris/srris.h"

namespace
{
    struct Common
    {
        std::string config_path;
        std::optional<std::uint64_t> seed;
        std::string out_path;
        int threads = 1;
        bool print_defaults = false;
    };

    struct Failure
    {
        srris_status status;
        std::string message;
    };

    void check(srris_status s)
    {
        if (s != SRRIS_OK)
            throw Failure{s, srris_last_error()};
    }

    // Owns a string handed out by the library.
    struct LibString
    {
        char *p = nullptr;
        ~LibString() { srris_string_free(p); }
        std::string str() const { return p ? std::string(p) : std::string(); }
    };

    struct ConfigHandle
    {
        srris_config *p = nullptr;
        ~ConfigHandle() { srris_config_free(p); }
    };

    std::string read_file(const std::string &path)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw Failure{SRRIS_ERR_CONFIG, "cannot open config file '" + path + "'"};
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    void write_out(const std::string &path, const std::string &text)
    {
        if (path.empty() || path == "-")
        {
            std::cout << text;
            std::cout.flush();
            return;
        }
        std::ofstream out(path, std::ios::binary);
        if (!out)
            throw Failure{SRRIS_ERR_CONFIG, "cannot open output file '" + path + "'"};
        out << text;
        if (!out)
            throw Failure{SRRIS_ERR_INTERNAL, "write failed for '" + path + "'"};
    }

    std::string defaults_json()
    {
        ConfigHandle cfg;
        check(srris_config_create(&cfg.p));
        LibString js;
        check(srris_config_to_json(cfg.p, &js.p));
        return js.str() + "\n";
    }

    void load(const Common &c, ConfigHandle &cfg)
    {
        if (c.config_path.empty())
            check(srris_config_create(&cfg.p));
        else
            check(srris_config_from_json(read_file(c.config_path).c_str(), &cfg.p));
        if (c.seed)
            check(srris_config_set_seed(cfg.p, *c.seed));
    }

    void add_common(CLI::App *sub, Common &c)
    {
        sub->add_option("--config", c.config_path, "JSON configuration file")->check(CLI::ExistingFile);
        sub->add_option("--seed", c.seed, "master seed, overrides the config");
        sub->add_option("--out", c.out_path, "output CSV path (stdout when omitted)");
        sub->add_option("--threads", c.threads, "worker threads")->check(CLI::Range(1, 1024));
        sub->add_flag("--print-defaults", c.print_defaults, "print the default configuration and exit");
    }

    int report(const Failure &f)
    {
        nlohmann::json err = {{"error", srris_status_name(f.status)}, {"code", static_cast<int>(f.status)},
                              {"message", f.message}};
        std::cerr << err.dump() << "\n";
        return 2;
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"Successive relaying with two reconfigurable surfaces: sweeps, traces and bounds"};
    app.require_subcommand(0, 1);
    bool top_defaults = false;
    std::string top_out;
    app.add_flag("--print-defaults", top_defaults, "print the default configuration and exit");
    app.add_option("--out", top_out, "output path for --print-defaults");
    app.set_version_flag("--version", std::string(srris_version()));

    Common c;
    std::string summary_path;
    auto *sweep = app.add_subcommand("sweep", "Monte-Carlo rate sweep over SNR and M, one row per scheme and trial");
    add_common(sweep, c);
    sweep->add_option("--summary", summary_path, "also write per-point mean and standard error to this path");
    auto *trace = app.add_subcommand("pso-trace", "best-so-far PSO trace on one realization");
    add_common(trace, c);
    auto *bound = app.add_subcommand("sdp-bound", "relaxation upper bound and extracted rate per trial");
    add_common(bound, c);
    auto *oracle = app.add_subcommand("oracle", "exhaustive grid search on a tiny instance");
    add_common(oracle, c);
    auto *conv = app.add_subcommand("convergence", "mean PSO trace per (M, mu)");
    add_common(conv, c);

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (top_defaults || c.print_defaults)
        {
            write_out(top_defaults ? top_out : c.out_path, defaults_json());
            return 0;
        }
        if (app.get_subcommands().empty())
        {
            std::cerr << app.help();
            return 1;
        }

        ConfigHandle cfg;
        load(c, cfg);
        LibString csv;

        if (sweep->parsed())
        {
            LibString summary;
            check(srris_run_sweep(cfg.p, c.threads, &csv.p, summary_path.empty() ? nullptr : &summary.p));
            if (!summary_path.empty())
                write_out(summary_path, summary.str());
        }
        else if (trace->parsed())
            check(srris_run_pso_trace(cfg.p, &csv.p));
        else if (bound->parsed())
            check(srris_run_sdp_bound(cfg.p, c.threads, &csv.p));
        else if (oracle->parsed())
            check(srris_run_oracle(cfg.p, &csv.p));
        else
            check(srris_run_convergence(cfg.p, c.threads, &csv.p));

        write_out(c.out_path, csv.str());
        return 0;
    }
    catch (const Failure &f)
    {
        return report(f);
    }
    catch (const std::exception &e)
    {
        return report({SRRIS_ERR_INTERNAL, e.what()});
    }
}
