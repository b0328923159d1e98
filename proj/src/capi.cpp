#include "bisectrix.h"

#include <new>
#include <string>

#include <json.hpp>

#include "bisectrix/engine.hpp"
#include "bisectrix/error.hpp"

struct bx_report {
    bx_status status = BX_OK;
    std::string payload;
    std::string error_code;
    std::string error_message;
};

namespace {

bx_status status_for(bisectrix::ErrorCode c) {
    using EC = bisectrix::ErrorCode;
    return c == EC::BadInput ? BX_ERR_USAGE : BX_ERR_DOMAIN;
}

template <typename F>
bx_status guarded(bx_report** out, F&& body) {
    if (!out) return BX_ERR_USAGE;
    *out = nullptr;
    auto* rep = new (std::nothrow) bx_report;
    if (!rep) return BX_ERR_INTERNAL;
    try {
        rep->payload = body();
    } catch (const bisectrix::Error& e) {
        rep->status = status_for(e.code());
        rep->error_code = bisectrix::error_code_name(e.code());
        rep->error_message = e.what();
    } catch (const nlohmann::json::exception& e) {
        rep->status = BX_ERR_USAGE;
        rep->error_code = "InvalidJson";
        rep->error_message = e.what();
    } catch (const std::exception& e) {
        rep->status = BX_ERR_INTERNAL;
        rep->error_code = "Internal";
        rep->error_message = e.what();
    }
    *out = rep;
    return rep->status;
}

}  // namespace

extern "C" {

bx_status bx_run(const char* request_json, bx_report** out) {
    return guarded(out, [&] {
        if (!request_json)
            bisectrix::fail(bisectrix::ErrorCode::BadInput, "null request");
        const auto request = nlohmann::json::parse(request_json);
        return bisectrix::engine::run(request).dump();
    });
}

bx_status bx_render_svg(const char* report_json, bx_report** out) {
    return guarded(out, [&] {
        if (!report_json)
            bisectrix::fail(bisectrix::ErrorCode::BadInput, "null report");
        const auto report = nlohmann::json::parse(report_json);
        return bisectrix::engine::render_svg(report);
    });
}

bx_status bx_report_status(const bx_report* rep) {
    return rep ? rep->status : BX_ERR_USAGE;
}

const char* bx_report_payload(const bx_report* rep) {
    return rep ? rep->payload.c_str() : "";
}

const char* bx_report_error_code(const bx_report* rep) {
    return rep ? rep->error_code.c_str() : "";
}

const char* bx_report_error_message(const bx_report* rep) {
    return rep ? rep->error_message.c_str() : "";
}

void bx_report_free(bx_report* rep) { delete rep; }

const char* bx_version(void) { return "1.0.0"; }

}  // extern "C"
