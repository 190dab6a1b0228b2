#include <math.h>
#include <stdio.h>
#include <string.h>

#include "nshd.h"

static const char *CONFIG =
    "schema_version = 1\n"
    "[solver]\n"
    "n = 2\n"
    "resolution = 32\n"
    "alpha = \"5/4\"\n"
    "t_end = 1.0\n"
    "[initial]\n"
    "kind = \"taylor_green\"\n";

int main(void) {
    NshdSimulation *sim = NULL;
    if (nshd_simulation_new_from_toml(CONFIG, &sim) != NSHD_STATUS_OK) {
        fprintf(stderr, "new: %s\n", nshd_last_error_message());
        return 1;
    }
    double e0 = nshd_simulation_energy(sim);
    if (nshd_simulation_advance(sim, 1.0) != NSHD_STATUS_OK) {
        fprintf(stderr, "advance: %s\n", nshd_last_error_message());
        return 1;
    }
    NshdDiagnostics d;
    nshd_simulation_diagnostics(sim, &d);
    double expect = e0 * exp(-2.0 * pow(2.0, 1.25));
    if (fabs(d.energy - expect) > 1e-10 * expect) {
        fprintf(stderr, "energy %.17g, expected %.17g\n", d.energy, expect);
        return 1;
    }
    if (nshd_simulation_step_fixed(sim, -1.0, 1) != NSHD_STATUS_INVALID_ARGUMENT ||
        nshd_last_error_message() == NULL) {
        return 1;
    }
    nshd_simulation_free(sim);

    int64_t num, den;
    NshdClassification c;
    if (nshd_solvability_margin(3, 5, 4, &num, &den, &c) != NSHD_STATUS_OK || num != 0 ||
        c != NSHD_CLASSIFICATION_CRITICAL) {
        return 1;
    }
    printf("ok %s\n", nshd_version());
    return 0;
}
