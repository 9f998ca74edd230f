#include <stdio.h>
#include "knodeldom.h"

int main(void) {
    KdGraph *g = NULL;
    if (kd_graph_new(3, 22, &g) != KD_STATUS_OK) {
        fprintf(stderr, "%s\n", kd_last_error_message());
        return 1;
    }

    size_t len = 0;
    kd_construct_optimal_tds(22, NULL, 0, &len);
    KdVertex set[64];
    if (len > 64 || kd_construct_optimal_tds(22, set, 64, &len) != KD_STATUS_OK) return 2;

    bool holds = false;
    kd_is_total_dominating(g, set, len, &holds);

    KdSolveOptions opts = kd_solve_options_default();
    opts.exhaust_below_bound = true;
    KdSolveResult *r = NULL;
    if (kd_solve(g, &opts, &r) != KD_STATUS_OK) return 3;
    KdCertificate cert;
    kd_solve_result_certificate(r, &cert);

    printf("%s n=%zu construction=%zu holds=%d optimum=%zu certificate=%d\n",
           kd_version(), kd_graph_n(g), len, holds, kd_solve_result_optimum(r), (int)cert);

    kd_solve_result_free(r);
    kd_graph_free(g);
    return 0;
}
