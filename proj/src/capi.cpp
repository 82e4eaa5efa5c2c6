#include "wadg/wadg.h"

#include <cstring>
#include <string>

#include "harness.hpp"

namespace {

thread_local std::string g_last_error;

wadg_status record_error(wadg_status code, const char* what) {
    g_last_error = what ? what : "unknown error";
    return code;
}

template <typename Fn>
wadg_status guarded(Fn&& fn) {
    try {
        fn();
        return WADG_OK;
    } catch (const std::invalid_argument& e) {
        return record_error(WADG_ERR_INVALID_ARGUMENT, e.what());
    } catch (const wadg::IoError& e) {
        return record_error(WADG_ERR_IO, e.what());
    } catch (const wadg::NumericalError& e) {
        return record_error(WADG_ERR_NUMERICAL, e.what());
    } catch (const std::exception& e) {
        return record_error(WADG_ERR_INTERNAL, e.what());
    } catch (...) {
        return record_error(WADG_ERR_INTERNAL, "unknown exception");
    }
}

}  // namespace

struct wadg_config {
    wadg::ExperimentConfig cfg;
    wadg::RateTable result;
    bool has_result = false;
};

extern "C" {

const char* wadg_version(void) { return "wadg 1.0.0"; }

const char* wadg_last_error(void) { return g_last_error.c_str(); }

wadg_config* wadg_config_create(const char* experiment) {
    if (!experiment) return nullptr;
    auto* handle = new (std::nothrow) wadg_config;
    if (!handle) return nullptr;
    handle->cfg.experiment = experiment;
    return handle;
}

void wadg_config_destroy(wadg_config* cfg) { delete cfg; }

wadg_status wadg_config_set(wadg_config* cfg, const char* key, const char* value) {
    if (!cfg || !key || !value)
        return record_error(WADG_ERR_INVALID_ARGUMENT, "null config/key/value");
    return guarded([&] {
        if (std::strcmp(key, "experiment") == 0)
            cfg->cfg.experiment = value;
        else
            cfg->cfg.kv[key] = value;
    });
}

wadg_status wadg_config_load_file(wadg_config* cfg, const char* path) {
    if (!cfg || !path) return record_error(WADG_ERR_INVALID_ARGUMENT, "null config/path");
    return guarded([&] {
        wadg::ExperimentConfig file_cfg = wadg::parse_config_file(path);
        if (cfg->cfg.experiment.empty()) cfg->cfg.experiment = file_cfg.experiment;
        // explicit settings take precedence over the file
        for (const auto& [k, v] : file_cfg.kv)
            cfg->cfg.kv.emplace(k, v);
    });
}

wadg_status wadg_run_experiment(wadg_config* cfg) {
    if (!cfg) return record_error(WADG_ERR_INVALID_ARGUMENT, "null config");
    return guarded([&] {
        cfg->result = wadg::run_experiment(cfg->cfg);
        cfg->has_result = true;
    });
}

wadg_status wadg_result_shape(const wadg_config* cfg, size_t* rows, size_t* cols) {
    if (!cfg || !rows || !cols)
        return record_error(WADG_ERR_INVALID_ARGUMENT, "null argument");
    if (!cfg->has_result)
        return record_error(WADG_ERR_INVALID_ARGUMENT, "no experiment has been run");
    *rows = cfg->result.rows.size();
    *cols = cfg->result.header.size();
    return WADG_OK;
}

wadg_status wadg_result_data(const wadg_config* cfg, double* buffer, size_t capacity) {
    if (!cfg || !buffer) return record_error(WADG_ERR_INVALID_ARGUMENT, "null argument");
    if (!cfg->has_result)
        return record_error(WADG_ERR_INVALID_ARGUMENT, "no experiment has been run");
    size_t need = cfg->result.rows.size() * cfg->result.header.size();
    if (capacity < need)
        return record_error(WADG_ERR_INVALID_ARGUMENT, "result buffer too small");
    size_t idx = 0;
    for (const auto& row : cfg->result.rows)
        for (size_t c = 0; c < cfg->result.header.size(); ++c)
            buffer[idx++] = c < row.size() ? row[c] : std::nan("");
    return WADG_OK;
}

void wadg_set_threads(int count) { wadg::configure_threads(count); }

}  // extern "C"
