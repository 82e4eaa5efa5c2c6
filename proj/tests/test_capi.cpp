// Exercises the shared-library surface the CLI uses.
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "wadg/wadg.h"

static int failures = 0;

#define EXPECT(cond)                                                          \
    do {                                                                      \
        if (!(cond)) {                                                        \
            std::fprintf(stderr, "FAILED %s:%d: %s\n", __FILE__, __LINE__, #cond); \
            ++failures;                                                       \
        }                                                                     \
    } while (0)

int main() {
    EXPECT(wadg_version() != nullptr);
    EXPECT(std::strlen(wadg_version()) > 0);

    // lifecycle + error paths
    EXPECT(wadg_config_create(nullptr) == nullptr);
    wadg_config* cfg = wadg_config_create("projection");
    EXPECT(cfg != nullptr);
    EXPECT(wadg_config_set(cfg, "n", "1..1") == WADG_OK);
    EXPECT(wadg_config_set(cfg, "mesh", "2,4") == WADG_OK);
    EXPECT(wadg_config_set(nullptr, "n", "1") == WADG_ERR_INVALID_ARGUMENT);

    size_t rows = 0, cols = 0;
    EXPECT(wadg_result_shape(cfg, &rows, &cols) == WADG_ERR_INVALID_ARGUMENT);

    const char* out_path = "wadg_capi_out.csv";
    EXPECT(wadg_config_set(cfg, "out", out_path) == WADG_OK);
    EXPECT(wadg_run_experiment(cfg) == WADG_OK);
    EXPECT(wadg_result_shape(cfg, &rows, &cols) == WADG_OK);
    EXPECT(rows == 2);
    EXPECT(cols == 5);
    std::vector<double> data(rows * cols);
    EXPECT(wadg_result_data(cfg, data.data(), data.size()) == WADG_OK);
    EXPECT(data[0] == 1.0);              // N column
    EXPECT(data[1] == 1.0);              // h = 1
    EXPECT(data[2] > 0.0);               // error positive
    EXPECT(data[cols + 2] < data[2]);    // refinement shrinks the error
    EXPECT(wadg_result_data(cfg, data.data(), 1) == WADG_ERR_INVALID_ARGUMENT);
    {
        std::ifstream f(out_path);
        EXPECT(f.good());
    }
    std::remove(out_path);
    wadg_config_destroy(cfg);

    // bad experiment name -> invalid argument with a message
    wadg_config* bad = wadg_config_create("not-an-experiment");
    EXPECT(wadg_run_experiment(bad) == WADG_ERR_INVALID_ARGUMENT);
    EXPECT(std::strlen(wadg_last_error()) > 0);
    wadg_config_destroy(bad);

    // missing config file -> IO error
    wadg_config* c2 = wadg_config_create("projection");
    EXPECT(wadg_config_load_file(c2, "does_not_exist.cfg") == WADG_ERR_IO);

    // config file merge: explicit settings win
    const char* cfg_path = "wadg_capi_cfg.cfg";
    {
        std::ofstream f(cfg_path);
        f << "experiment = conservation\nn = 3..3\nmesh = 2\n";
    }
    EXPECT(wadg_config_set(c2, "n", "1..1") == WADG_OK);
    EXPECT(wadg_config_load_file(c2, cfg_path) == WADG_OK);
    EXPECT(wadg_run_experiment(c2) == WADG_OK);
    EXPECT(wadg_result_shape(c2, &rows, &cols) == WADG_OK);
    EXPECT(rows == 1);  // n=1..1 from the explicit setting, one mesh
    std::remove(cfg_path);
    wadg_config_destroy(c2);

    // numerical failure propagates as WADG_ERR_NUMERICAL
    wadg_config* c3 = wadg_config_create("solve");
    wadg_config_set(c3, "n", "1");
    wadg_config_set(c3, "mesh", "3");
    wadg_config_set(c3, "field", "layered");  // straddles y = 0 on odd meshes
    EXPECT(wadg_run_experiment(c3) == WADG_ERR_INVALID_ARGUMENT);
    wadg_config_destroy(c3);

    wadg_set_threads(1);

    if (failures == 0) std::printf("capi tests passed\n");
    return failures == 0 ? 0 : 1;
}
