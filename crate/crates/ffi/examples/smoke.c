#include <stdio.h>
#include "photonbox.h"

int main(void) {
    PbState *state = NULL;
    if (pb_state_coherent_auto(0.5, 0.0, 1.0, 1.0, 1.0, &state) != PB_STATUS_OK) {
        fprintf(stderr, "%s\n", pb_last_error_message());
        return 1;
    }
    PbIndeterminacy dp;
    pb_indeterminacy(state, PB_OBSERVABLE_MOMENTUM, &dp);
    printf("dim %zu  dp %.12f\n", pb_state_dim(state), dp.sigma);
    pb_state_free(state);

    PbDebateParams params = {1.0, 1.0, 1.0, 1.0, 1.0, 1.0};
    double threshold = 0.0;
    pb_counterexample_threshold(&params, &threshold);
    printf("threshold %.12f\n", threshold);
    return 0;
}
