#include <stdio.h>
#include <string.h>
#include "ramsey_lab.h"

#define CHECK(x) do { if (!(x)) { fprintf(stderr, "failed: %s (%s)\n", #x, rl_last_error()); return 1; } } while (0)

int main(void) {
    RlColoring *w = NULL;
    CHECK(rl_lower_bound_witness(3, 3, 3, RL_PAIR_CC, &w) == RL_STATUS_OK);
    uint32_t k = 0, n = 0;
    uint64_t e = 0;
    CHECK(rl_coloring_shape(w, &k, &n, &e) == RL_STATUS_OK);
    CHECK(k == 3 && n == 6 && e == 20);
    rl_coloring_free(w);

    uint64_t count = 0;
    CHECK(rl_count_copies(3, 6, RL_KIND_CYCLE, 3, &count) == RL_STATUS_OK);
    CHECK(count == 120);

    RlArrowConfig cfg = {0, 0.0, 1, false};
    RlArrowStatus st = RL_ARROW_STATUS_UNKNOWN;
    CHECK(rl_decide_arrowing(3, 7, RL_KIND_CYCLE, 3, RL_KIND_CYCLE, 3, cfg, &st, NULL, NULL) == RL_STATUS_OK);
    CHECK(st == RL_ARROW_STATUS_UNSAT);

    char *json = NULL;
    CHECK(rl_coloring_to_json(NULL, false, &json) == RL_STATUS_NULL_POINTER);
    CHECK(strlen(rl_last_error()) > 0);

    printf("ok %s\n", rl_version());
    return 0;
}
