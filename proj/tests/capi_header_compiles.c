// Compile-only check: the public header must be valid C.
#include <coops/coops.h>

int coops_header_compiles_as_c(void) {
    coops_session* (*new_fn)(uint32_t, long long, int) = coops_session_new;
    coops_status (*basis_fn)(coops_session*, const char*, char**) = coops_basis;
    coops_status (*margolis_fn)(coops_session*, const char*, int, char**) = coops_margolis;
    coops_status (*ext_fn)(coops_session*, const char*, const char*, int, long long,
                           const char*, char**) = coops_ext_chart;
    coops_status (*table_fn)(coops_session*, long long, const char*, char**, char**) =
        coops_table;
    coops_status (*verify_fn)(coops_session*, const char*, long long, const char*, int*,
                              char**) = coops_verify;
    coops_status (*get_fn)(const char*, char**) = coops_cache_get;
    int sum = 0;
    sum += new_fn != 0;
    sum += basis_fn != 0;
    sum += margolis_fn != 0;
    sum += ext_fn != 0;
    sum += table_fn != 0;
    sum += verify_fn != 0;
    sum += get_fn != 0;
    return sum;
}
