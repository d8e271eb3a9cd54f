/* Links against libdynrr_ffi and runs DABRR on the first reference case. */
#include <stdio.h>
#include "dynrr.h"

int main(void) {
    DynrrWorkload *w = NULL;
    DynrrRun *run = NULL;
    if (dynrr_workload_from_case("I", &w) != DYNRR_STATUS_OK) {
        fprintf(stderr, "%s\n", dynrr_last_error());
        return 1;
    }
    if (dynrr_simulate(w, "dabrr", &run) != DYNRR_STATUS_OK) {
        fprintf(stderr, "%s\n", dynrr_last_error());
        dynrr_workload_free(w);
        return 1;
    }
    double waiting = 0, turnaround = 0;
    dynrr_run_averages(run, &waiting, &turnaround, NULL);
    printf("quanta:");
    for (size_t i = 0; i < dynrr_run_quantum_count(run); i++) {
        uint64_t q = 0;
        dynrr_run_quantum_at(run, i, &q);
        printf(" %llu", (unsigned long long)q);
    }
    printf("\ncontext switches: %llu\n", (unsigned long long)dynrr_run_context_switches(run));
    printf("average waiting: %.1f\naverage turnaround: %.1f\n", waiting, turnaround);

    DynrrRun *rejected = NULL;
    DynrrStatus bad = dynrr_simulate(w, "fifo", &rejected);
    printf("unknown algorithm -> status %d: %s\n", (int)bad, dynrr_last_error());

    dynrr_run_free(run);
    dynrr_workload_free(w);
    return 0;
}
