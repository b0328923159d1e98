/* C API for the bisectrix geometric-extrema library.
 *
 * All functionality is reached through JSON requests:
 *   {"command": "...", "params": {...}}
 * The result is an opaque report handle carrying either a JSON report
 * (bx_run) or an SVG document (bx_render_svg) as a NUL-terminated string.
 */
#ifndef BISECTRIX_H
#define BISECTRIX_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
    BX_OK = 0,
    BX_ERR_DOMAIN = 1,  /* valid request, no valid answer (e.g. degenerate scene) */
    BX_ERR_USAGE = 2,   /* malformed request or schema violation */
    BX_ERR_INTERNAL = 3
} bx_status;

typedef struct bx_report bx_report;

/* Execute a request. Always produces a report handle (even on error) unless
 * allocation fails; the returned status matches bx_report_status. The caller
 * owns the handle and must free it with bx_report_free. */
bx_status bx_run(const char* request_json, bx_report** out);

/* Render a previously produced JSON report as SVG. */
bx_status bx_render_svg(const char* report_json, bx_report** out);

bx_status bx_report_status(const bx_report* rep);

/* JSON report text (bx_run) or SVG text (bx_render_svg); empty on error.
 * The pointer is valid until bx_report_free. */
const char* bx_report_payload(const bx_report* rep);

/* Stable error code name ("ParallelLines", ...), empty string on success. */
const char* bx_report_error_code(const bx_report* rep);

const char* bx_report_error_message(const bx_report* rep);

void bx_report_free(bx_report* rep);

const char* bx_version(void);

#ifdef __cplusplus
}
#endif

#endif /* BISECTRIX_H */
