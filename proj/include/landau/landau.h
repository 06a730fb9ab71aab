/* C interface to the landau library. All handles are opaque; every call
 * that can fail returns a landau_status and records a message retrievable
 * with landau_last_error on the session. */
#ifndef LANDAU_H
#define LANDAU_H

#include <stddef.h>

#if defined(LANDAU_BUILDING_LIBRARY)
#define LANDAU_API __attribute__((visibility("default")))
#else
#define LANDAU_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct landau_session landau_session;
typedef struct landau_result landau_result;

typedef enum landau_status {
  LANDAU_OK = 0,
  LANDAU_INVALID_ARGUMENT = 1,
  LANDAU_CONFIG = 2,
  LANDAU_NONCONVERGENCE = 3,
  LANDAU_ASSERTION = 4,
  LANDAU_NO_GAP = 5,
  LANDAU_INTERNAL = 6
} landau_status;

LANDAU_API const char* landau_version(void);
LANDAU_API const char* landau_status_name(landau_status s);

LANDAU_API landau_status landau_session_create(landau_session** out);
LANDAU_API void landau_session_destroy(landau_session* s);

/* "landau", "jaynes_cummings" or "quaternionic". */
LANDAU_API landau_status landau_session_set_model(landau_session* s, const char* name);

/* Keys: ell_B eps_B xi c_b r0 r1 r2 nmax tolerance gap_threshold
 * verify_tolerance. */
LANDAU_API landau_status landau_session_set_param(landau_session* s, const char* key, double value);
LANDAU_API landau_status landau_session_get_param(const landau_session* s, const char* key, double* value);

/* Checks every parameter constraint of the selected model. */
LANDAU_API landau_status landau_session_validate(landau_session* s);

/* Message of the last failed call on this session, "" if none. */
LANDAU_API const char* landau_last_error(const landau_session* s);

/* Closed-form and diagonalized levels for the requested j plus the gap list. */
LANDAU_API landau_status landau_spectrum(landau_session* s, const int* levels, size_t n_levels, landau_result** out);

/* Rank and Chern number of a Landau level (sign ignored) or of the
 * Jaynes-Cummings projection P_j^sign. */
LANDAU_API landau_status landau_invariants_level(landau_session* s, int j, int sign, landau_result** out);

/* Rank and Chern number of the Fermi projection at the given energy. */
LANDAU_API landau_status landau_invariants_fermi(landau_session* s, double energy, landau_result** out);

/* Identity suite; check == NULL or "" runs every check. */
LANDAU_API landau_status landau_verify(landau_session* s, const char* check, landau_result** out);

/* Number of registered checks and their names. */
LANDAU_API size_t landau_check_count(void);
LANDAU_API const char* landau_check_name(size_t index);

/* Copies at most cap-1 bytes plus a terminator and returns the full length. */
LANDAU_API size_t landau_result_json(const landau_result* r, char* buf, size_t cap);
LANDAU_API size_t landau_result_csv_count(const landau_result* r);
LANDAU_API const char* landau_result_csv_name(const landau_result* r, size_t index);
LANDAU_API size_t landau_result_csv(const landau_result* r, size_t index, char* buf, size_t cap);

/* Status of the computation itself: LANDAU_NONCONVERGENCE for uncertified
 * estimates, LANDAU_ASSERTION for failed checks or parity. */
LANDAU_API landau_status landau_result_status(const landau_result* r);
LANDAU_API int landau_result_ok(const landau_result* r);
LANDAU_API void landau_result_destroy(landau_result* r);

#ifdef __cplusplus
}
#endif

#endif /* LANDAU_H */
