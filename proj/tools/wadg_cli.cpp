// Experiment driver. Talks to the solver library exclusively through the
// C API in wadg/wadg.h; exit codes: 0 ok, 2 bad config, 3 numerical
// failure, 4 I/O failure.
#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wadg/wadg.h"

namespace {

int status_to_exit_code(wadg_status st) {
    switch (st) {
        case WADG_OK: return 0;
        case WADG_ERR_INVALID_ARGUMENT: return 2;
        case WADG_ERR_NUMERICAL: return 3;
        case WADG_ERR_IO: return 4;
        default: return 3;
    }
}

struct ConfigDeleter {
    void operator()(wadg_config* c) const { wadg_config_destroy(c); }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Weight-adjusted DG experiment harness"};
    app.set_version_flag("--version", wadg_version());
    app.require_subcommand(1);

    const std::vector<std::string> experiments = {
        "projection",           "projection-cone",
        "conservation",         "conservation-regularity",
        "convergence-manufactured", "convergence-reference",
        "quadrature-sweep",     "solve"};

    struct Options {
        std::string config_file, n, mesh, field, quad_degree, mode, out, dump, dump_mesh;
        std::string tfinal, cfl, cone_a, pulse_x, pulse_y, pulse_width;
    };
    std::vector<std::pair<CLI::App*, std::shared_ptr<Options>>> subs;
    for (const auto& name : experiments) {
        auto* sub = app.add_subcommand(name);
        auto opt = std::make_shared<Options>();
        sub->add_option("--config", opt->config_file, "flat key = value config file");
        sub->add_option("--n", opt->n, "polynomial degree N or range N1..N2");
        sub->add_option("--mesh", opt->mesh, "comma-separated cells-per-side list");
        sub->add_option("--field", opt->field,
                        "wavespeed/weight field (smoothsine|cone:a=..|layered|const:v=..|expxy)");
        sub->add_option("--quad-degree", opt->quad_degree, "quadrature degree D or range D1..D2");
        sub->add_option("--mode", opt->mode, "standard|wadg|wadg-cons");
        sub->add_option("--tfinal", opt->tfinal, "final time");
        sub->add_option("--cfl", opt->cfl, "CFL number");
        sub->add_option("--out", opt->out, "CSV output path");
        sub->add_option("--cone-a", opt->cone_a, "cone regularization list (projection-cone)");
        sub->add_option("--dump", opt->dump, "pressure field dump path (solve)");
        sub->add_option("--dump-mesh", opt->dump_mesh, "mesh dump path (solve)");
        sub->add_option("--pulse-x", opt->pulse_x, "Gaussian pulse center x (solve)");
        sub->add_option("--pulse-y", opt->pulse_y, "Gaussian pulse center y (solve)");
        sub->add_option("--pulse-width", opt->pulse_width, "Gaussian pulse width (solve)");
        subs.emplace_back(sub, opt);
    }

    CLI11_PARSE(app, argc, argv);

    CLI::App* chosen = nullptr;
    std::shared_ptr<Options> opt;
    for (auto& [sub, o] : subs)
        if (sub->parsed()) {
            chosen = sub;
            opt = o;
        }
    if (!chosen) {
        std::fprintf(stderr, "error: no experiment selected\n");
        return 2;
    }

    std::unique_ptr<wadg_config, ConfigDeleter> cfg(wadg_config_create(chosen->get_name().c_str()));
    if (!cfg) {
        std::fprintf(stderr, "error: out of memory\n");
        return 3;
    }

    auto set = [&](const char* key, const std::string& value) -> wadg_status {
        if (value.empty()) return WADG_OK;
        return wadg_config_set(cfg.get(), key, value.c_str());
    };
    wadg_status st = WADG_OK;
    auto check = [&](wadg_status s) {
        if (st == WADG_OK) st = s;
    };
    check(set("n", opt->n));
    check(set("mesh", opt->mesh));
    check(set("field", opt->field));
    check(set("quad-degree", opt->quad_degree));
    check(set("mode", opt->mode));
    check(set("tfinal", opt->tfinal));
    check(set("cfl", opt->cfl));
    check(set("out", opt->out));
    check(set("cone-a", opt->cone_a));
    check(set("dump", opt->dump));
    check(set("dump-mesh", opt->dump_mesh));
    check(set("pulse-x", opt->pulse_x));
    check(set("pulse-y", opt->pulse_y));
    check(set("pulse-width", opt->pulse_width));
    if (st == WADG_OK && !opt->config_file.empty())
        check(wadg_config_load_file(cfg.get(), opt->config_file.c_str()));
    if (st != WADG_OK) {
        std::fprintf(stderr, "error: %s\n", wadg_last_error());
        return status_to_exit_code(st);
    }

    st = wadg_run_experiment(cfg.get());
    if (st != WADG_OK) {
        std::fprintf(stderr, "error: %s\n", wadg_last_error());
        return status_to_exit_code(st);
    }
    size_t rows = 0, cols = 0;
    wadg_result_shape(cfg.get(), &rows, &cols);
    std::fprintf(stdout, "%s: %zu rows x %zu columns%s%s\n", chosen->get_name().c_str(), rows,
                 cols, opt->out.empty() ? "" : " -> ", opt->out.c_str());
    return 0;
}
