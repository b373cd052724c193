#include <math.h>
#include <stdio.h>
#include "hydrogen_levels.h"

int main(void) {
    HlContext *ctx = hl_context_new();
    double t = 0.0, re = 0.0, im = 0.0;
    uint32_t z = 0;
    if (hl_level(ctx, HL_MODEL_KIND_QUASICLASSICAL, 0, 0, &t) != HL_STATUS_OK) return 1;
    if (fabs(t + 13.59810661) > 1e-8) return 2;
    if (hl_complex_mass(ctx, 0, 0, &re, &im) != HL_STATUS_OK) return 3;
    if (hl_critical_z(ctx, HL_CRITICAL_KIND_KLEIN_GORDON, 0, &z) != HL_STATUS_OK || z != 68) return 4;
    if (hl_level(ctx, 42, 0, 0, &t) != HL_STATUS_INVALID_ARGUMENT) return 5;
    if (hl_last_error_message() == NULL) return 6;
    printf("%.8f %.6f %s\n", t, im, hl_version());
    hl_context_free(ctx);
    return 0;
}
