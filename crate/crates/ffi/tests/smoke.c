#include <stdio.h>
#include <string.h>

#include "distpoly.h"

#define CHECK(call)                                                        \
    do {                                                                   \
        DpStatus st_ = (call);                                             \
        if (st_ != DP_STATUS_OK) {                                         \
            fprintf(stderr, "%s: %d %s\n", #call, st_, dp_last_error());   \
            return 1;                                                      \
        }                                                                  \
    } while (0)

int main(int argc, char **argv) {
    if (argc != 3) {
        fprintf(stderr, "usage: smoke SCENARIO DISTRIBUTION\n");
        return 2;
    }
    DpScenario *s = NULL;
    DpDistribution *d = NULL;
    bool vertex = false, contextual = false;
    uint64_t count = 0;
    CHECK(dp_scenario_load(argv[1], &s));
    CHECK(dp_distribution_load(s, argv[2], &d));
    CHECK(dp_is_vertex(d, &vertex));
    CHECK(dp_is_contextual(d, &contextual));
    CHECK(dp_count(DP_FAMILY_ROSE, 1, 3, false, 0, &count));
    printf("vertex=%d contextual=%d kappa=%llu\n", vertex, contextual, (unsigned long long)count);
    if (dp_scenario_load("/nonexistent", &s) != DP_STATUS_IO || strstr(dp_last_error(), "nonexistent") == NULL) {
        return 1;
    }
    dp_distribution_free(d);
    dp_scenario_free(s);
    return 0;
}
