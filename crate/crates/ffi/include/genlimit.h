#ifndef GENLIMIT_H
#define GENLIMIT_H

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum GlStatus {
  GL_OK = 0,
  GL_DOMAIN = 1,
  GL_PARSE = 2,
  GL_RESOURCE_CAP = 3,
  GL_NULL_POINTER = 4,
  GL_INVALID_UTF8 = 5,
  GL_PANIC = 6,
} GlStatus;

typedef struct GlAutomaton GlAutomaton;
typedef struct GlFamily GlFamily;
typedef struct GlMachine GlMachine;

/* Message for the last failed call on this thread, or NULL. Do not free. */
const char *gl_last_error(void);

/* Releases a string returned through a char ** out-parameter. */
void gl_string_free(char *s);

GlStatus gl_automaton_parse(const char *text, GlAutomaton **out);
void gl_automaton_free(GlAutomaton *a);
/* Words use command-line syntax: "@" is the empty word, "." joins symbols. */
GlStatus gl_automaton_member(const GlAutomaton *a, const char *word, bool *out);
/* Decimal count or "inf". */
GlStatus gl_automaton_cardinality(const GlAutomaton *a, char **out);
GlStatus gl_automaton_is_finite(const GlAutomaton *a, bool *out);

GlStatus gl_family_parse(const char *text, GlFamily **out);
GlStatus gl_family_witness(size_t n, size_t k, bool padded, GlFamily **out);
void gl_family_free(GlFamily *f);
size_t gl_family_len(const GlFamily *f);
GlStatus gl_family_minimal_m(const GlFamily *f, char **out);
GlStatus gl_family_report(const GlFamily *f, char **out);
GlStatus gl_family_write(const GlFamily *f, char **out);
/* Comma-separated examples; output lists generated words then a status line. */
GlStatus gl_family_generate(const GlFamily *f, const char *examples, size_t max_len, char **out);

GlStatus gl_machine_parse(const char *text, GlMachine **out);
void gl_machine_free(GlMachine *m);
GlStatus gl_machine_history_count(const GlMachine *m, size_t max_len, size_t *out);
size_t gl_machine_history_length(const GlMachine *m, size_t max_configs);
/* oracle: decimal bound, "auto", or NULL. configs is -1 when not halting. */
GlStatus gl_machine_decide_halting(const GlMachine *m, const char *oracle, int64_t *configs, int32_t *proof_case);

#ifdef __cplusplus
}
#endif

#endif
