// SPDX-License-Identifier: Apache-2.0
#include "vxc/nn/autodiff.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

namespace vxc::nn {

namespace {

thread_local bool g_grad_enabled = true;

Variable make_node(Tensor value, std::vector<Variable> parents, BackwardFn backward,
                   const char* op) {
    auto node = std::make_shared<Node>();
    node->value = std::move(value);
    node->op = op;
    bool any_grad = false;
    for (const auto& p : parents) any_grad = any_grad || p.requires_grad();
    if (g_grad_enabled && any_grad) {
        node->requires_grad = true;
        node->parents = std::move(parents);
        node->backward = std::move(backward);
    }
    return Variable(std::move(node));
}

Variable from_weak(const std::weak_ptr<Node>& w) { return Variable(w.lock()); }

void check_same_shape(const Variable& a, const Variable& b, const char* op) {
    if (!a.value().same_shape(b.value()))
        throw ShapeError(std::string(op) + ": shape mismatch " + shape_to_string(a.shape()) +
                         " vs " + shape_to_string(b.shape()));
}

std::size_t per_sample_count(const Shape& s) {
    std::size_t n = 1;
    for (std::size_t i = 1; i < s.size(); ++i) n *= static_cast<std::size_t>(s[i]);
    return n;
}

std::size_t per_channel_count(const Shape& s) {
    std::size_t n = 1;
    for (std::size_t i = 2; i < s.size(); ++i) n *= static_cast<std::size_t>(s[i]);
    return n;
}

} // namespace

NoGradGuard::NoGradGuard() : prev_(g_grad_enabled) { g_grad_enabled = false; }
NoGradGuard::~NoGradGuard() { g_grad_enabled = prev_; }
bool grad_enabled() { return g_grad_enabled; }

Variable Variable::constant(Tensor t) {
    auto node = std::make_shared<Node>();
    node->value = std::move(t);
    node->op = "const";
    return Variable(std::move(node));
}

Variable Variable::parameter(Tensor t) {
    auto node = std::make_shared<Node>();
    node->value = std::move(t);
    node->requires_grad = true;
    node->op = "param";
    return Variable(std::move(node));
}

Variable detach(const Variable& v) { return Variable::constant(v.value()); }

// ---- elementwise ----

Variable add(const Variable& a, const Variable& b) {
    check_same_shape(a, b, "add");
    Tensor out = a.value();
    const double* bd = b.value().data();
    for (std::size_t i = 0; i < out.numel(); ++i) out[i] += bd[i];
    return make_node(std::move(out), {a, b},
                     [](const Variable& gy, const std::vector<bool>&) {
                         return std::vector<Variable>{gy, gy};
                     },
                     "add");
}

Variable sub(const Variable& a, const Variable& b) {
    check_same_shape(a, b, "sub");
    Tensor out = a.value();
    const double* bd = b.value().data();
    for (std::size_t i = 0; i < out.numel(); ++i) out[i] -= bd[i];
    return make_node(std::move(out), {a, b},
                     [](const Variable& gy, const std::vector<bool>&) {
                         return std::vector<Variable>{gy, scale(gy, -1.0)};
                     },
                     "sub");
}

Variable mul(const Variable& a, const Variable& b) {
    check_same_shape(a, b, "mul");
    Tensor out = a.value();
    const double* bd = b.value().data();
    for (std::size_t i = 0; i < out.numel(); ++i) out[i] *= bd[i];
    return make_node(std::move(out), {a, b},
                     [a, b](const Variable& gy, const std::vector<bool>& needed) {
                         std::vector<Variable> gs(2);
                         if (needed[0]) gs[0] = mul(gy, b);
                         if (needed[1]) gs[1] = mul(gy, a);
                         return gs;
                     },
                     "mul");
}

Variable div(const Variable& a, const Variable& b) {
    check_same_shape(a, b, "div");
    Tensor out = a.value();
    const double* bd = b.value().data();
    for (std::size_t i = 0; i < out.numel(); ++i) out[i] /= bd[i];
    Variable result = make_node(std::move(out), {a, b}, nullptr, "div");
    if (result.requires_grad()) {
        std::weak_ptr<Node> self = result.node();
        result.node()->backward = [a, b, self](const Variable& gy,
                                               const std::vector<bool>& needed) {
            std::vector<Variable> gs(2);
            if (needed[0]) gs[0] = div(gy, b);
            if (needed[1]) gs[1] = scale(mul(gy, div(from_weak(self), b)), -1.0); // -gy*out/b
            return gs;
        };
    }
    return result;
}

Variable scale(const Variable& a, double s) {
    Tensor out = a.value();
    for (std::size_t i = 0; i < out.numel(); ++i) out[i] *= s;
    return make_node(std::move(out), {a},
                     [s](const Variable& gy, const std::vector<bool>&) {
                         return std::vector<Variable>{scale(gy, s)};
                     },
                     "scale");
}

Variable add_scalar(const Variable& a, double s) {
    Tensor out = a.value();
    for (std::size_t i = 0; i < out.numel(); ++i) out[i] += s;
    return make_node(std::move(out), {a},
                     [](const Variable& gy, const std::vector<bool>&) {
                         return std::vector<Variable>{gy};
                     },
                     "add_scalar");
}

Variable square(const Variable& a) {
    Tensor out = a.value();
    for (std::size_t i = 0; i < out.numel(); ++i) out[i] *= out[i];
    return make_node(std::move(out), {a},
                     [a](const Variable& gy, const std::vector<bool>&) {
                         return std::vector<Variable>{scale(mul(gy, a), 2.0)};
                     },
                     "square");
}

Variable sqrt_v(const Variable& a) {
    Tensor out = a.value();
    for (std::size_t i = 0; i < out.numel(); ++i) out[i] = std::sqrt(out[i]);
    Variable result = make_node(std::move(out), {a}, nullptr, "sqrt");
    if (result.requires_grad()) {
        std::weak_ptr<Node> self = result.node();
        result.node()->backward = [self](const Variable& gy, const std::vector<bool>&) {
            return std::vector<Variable>{scale(div(gy, from_weak(self)), 0.5)};
        };
    }
    return result;
}

Variable log_v(const Variable& a) {
    Tensor out = a.value();
    for (std::size_t i = 0; i < out.numel(); ++i) out[i] = std::log(out[i]);
    return make_node(std::move(out), {a},
                     [a](const Variable& gy, const std::vector<bool>&) {
                         return std::vector<Variable>{div(gy, a)};
                     },
                     "log");
}

Variable clamp(const Variable& a, double lo, double hi) {
    Tensor out = a.value();
    Tensor mask(out.shape());
    for (std::size_t i = 0; i < out.numel(); ++i) {
        const double v = out[i];
        mask[i] = (v >= lo && v <= hi) ? 1.0 : 0.0;
        out[i] = v < lo ? lo : (v > hi ? hi : v);
    }
    Variable mask_c = Variable::constant(std::move(mask));
    return make_node(std::move(out), {a},
                     [mask_c](const Variable& gy, const std::vector<bool>&) {
                         return std::vector<Variable>{mul(gy, mask_c)};
                     },
                     "clamp");
}

namespace {

Variable masked_unit(const Variable& a, double negative_slope, const char* op) {
    Tensor out = a.value();
    Tensor mask(out.shape());
    for (std::size_t i = 0; i < out.numel(); ++i) {
        const bool pos = out[i] > 0.0;
        mask[i] = pos ? 1.0 : negative_slope;
        out[i] = pos ? out[i] : out[i] * negative_slope;
    }
    Variable mask_c = Variable::constant(std::move(mask));
    return make_node(std::move(out), {a},
                     [mask_c](const Variable& gy, const std::vector<bool>&) {
                         return std::vector<Variable>{mul(gy, mask_c)};
                     },
                     op);
}

} // namespace

Variable relu(const Variable& a) { return masked_unit(a, 0.0, "relu"); }

Variable leaky_relu(const Variable& a, double negative_slope) {
    return masked_unit(a, negative_slope, "leaky_relu");
}

Variable sigmoid(const Variable& a) {
    Tensor out = a.value();
    for (std::size_t i = 0; i < out.numel(); ++i) {
        const double x = out[i];
        out[i] = x >= 0.0 ? 1.0 / (1.0 + std::exp(-x)) : std::exp(x) / (1.0 + std::exp(x));
    }
    Variable result = make_node(std::move(out), {a}, nullptr, "sigmoid");
    if (result.requires_grad()) {
        std::weak_ptr<Node> self = result.node();
        result.node()->backward = [self](const Variable& gy, const std::vector<bool>&) {
            const Variable y = from_weak(self);
            // gy * y * (1 - y); y stays tracked for second-order paths
            return std::vector<Variable>{mul(gy, mul(y, add_scalar(scale(y, -1.0), 1.0)))};
        };
    }
    return result;
}

// ---- reductions / broadcasts ----

Variable sum_all(const Variable& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.value().numel(); ++i) s += a.value()[i];
    const Shape in_shape = a.shape();
    return make_node(Tensor::scalar(s), {a},
                     [in_shape](const Variable& gy, const std::vector<bool>&) {
                         return std::vector<Variable>{broadcast_to(gy, in_shape)};
                     },
                     "sum_all");
}

Variable broadcast_to(const Variable& s, const Shape& sh) {
    if (s.value().numel() != 1) throw ShapeError("broadcast_to expects a scalar variable");
    Tensor out(sh, s.value()[0]);
    return make_node(std::move(out), {s},
                     [](const Variable& gy, const std::vector<bool>&) {
                         return std::vector<Variable>{sum_all(gy)};
                     },
                     "broadcast_to");
}

Variable mean_all(const Variable& a) {
    return scale(sum_all(a), 1.0 / static_cast<double>(a.value().numel()));
}

Variable sum_per_sample(const Variable& a) {
    const int batch = a.shape()[0];
    const std::size_t per = per_sample_count(a.shape());
    Tensor out(Shape{batch});
    const double* ad = a.value().data();
    for (int b = 0; b < batch; ++b) {
        double s = 0.0;
        for (std::size_t i = 0; i < per; ++i) s += ad[static_cast<std::size_t>(b) * per + i];
        out[static_cast<std::size_t>(b)] = s;
    }
    const Shape in_shape = a.shape();
    return make_node(std::move(out), {a},
                     [in_shape](const Variable& gy, const std::vector<bool>&) {
                         return std::vector<Variable>{broadcast_rows(gy, in_shape)};
                     },
                     "sum_per_sample");
}

Variable broadcast_rows(const Variable& s, const Shape& sh) {
    if (s.value().ndim() != 1 || s.shape()[0] != sh[0])
        throw ShapeError("broadcast_rows: batch mismatch");
    const std::size_t per = per_sample_count(sh);
    Tensor out(sh);
    for (int b = 0; b < sh[0]; ++b) {
        const double v = s.value()[static_cast<std::size_t>(b)];
        for (std::size_t i = 0; i < per; ++i) out[static_cast<std::size_t>(b) * per + i] = v;
    }
    return make_node(std::move(out), {s},
                     [](const Variable& gy, const std::vector<bool>&) {
                         return std::vector<Variable>{sum_per_sample(gy)};
                     },
                     "broadcast_rows");
}

Variable mean_per_sample(const Variable& a) {
    return scale(sum_per_sample(a), 1.0 / static_cast<double>(per_sample_count(a.shape())));
}

Variable sum_to_channel(const Variable& a) {
    if (a.value().ndim() < 2) throw ShapeError("sum_to_channel needs a [B,C,..] tensor");
    const int batch = a.shape()[0], channels = a.shape()[1];
    const std::size_t per = per_channel_count(a.shape());
    Tensor out(Shape{channels});
    const double* ad = a.value().data();
    for (int b = 0; b < batch; ++b)
        for (int c = 0; c < channels; ++c) {
            double s = 0.0;
            const double* p = ad + (static_cast<std::size_t>(b) * channels + c) * per;
            for (std::size_t i = 0; i < per; ++i) s += p[i];
            out[static_cast<std::size_t>(c)] += s;
        }
    const Shape in_shape = a.shape();
    return make_node(std::move(out), {a},
                     [in_shape](const Variable& gy, const std::vector<bool>&) {
                         return std::vector<Variable>{broadcast_channel(gy, in_shape)};
                     },
                     "sum_to_channel");
}

Variable broadcast_channel(const Variable& b, const Shape& sh) {
    if (b.value().ndim() != 1 || b.shape()[0] != sh[1])
        throw ShapeError("broadcast_channel: channel count mismatch");
    const int batch = sh[0], channels = sh[1];
    const std::size_t per = per_channel_count(sh);
    Tensor out(sh);
    for (int bb = 0; bb < batch; ++bb)
        for (int c = 0; c < channels; ++c) {
            const double v = b.value()[static_cast<std::size_t>(c)];
            double* p = out.data() + (static_cast<std::size_t>(bb) * channels + c) * per;
            for (std::size_t i = 0; i < per; ++i) p[i] = v;
        }
    return make_node(std::move(out), {b},
                     [](const Variable& gy, const std::vector<bool>&) {
                         return std::vector<Variable>{sum_to_channel(gy)};
                     },
                     "broadcast_channel");
}

Variable add_bias(const Variable& x, const Variable& b) {
    return add(x, broadcast_channel(b, x.shape()));
}

// ---- linear algebra / shape ----

Variable matmul(const Variable& a, const Variable& b, bool trans_a, bool trans_b) {
    const Tensor& av = a.value();
    const Tensor& bv = b.value();
    if (av.ndim() != 2 || bv.ndim() != 2) throw ShapeError("matmul expects 2-d tensors");
    const int m = trans_a ? av.dim(1) : av.dim(0);
    const int ka = trans_a ? av.dim(0) : av.dim(1);
    const int kb = trans_b ? bv.dim(1) : bv.dim(0);
    const int n = trans_b ? bv.dim(0) : bv.dim(1);
    if (ka != kb)
        throw ShapeError("matmul: inner dims mismatch " + shape_to_string(av.shape()) + " vs " +
                         shape_to_string(bv.shape()));
    Tensor out(Shape{m, n});
    const double* A = av.data();
    const double* B = bv.data();
    double* C = out.data();
    for (int i = 0; i < m; ++i)
        for (int k = 0; k < ka; ++k) {
            const double x = trans_a ? A[static_cast<std::size_t>(k) * m + i]
                                     : A[static_cast<std::size_t>(i) * ka + k];
            if (x == 0.0) continue;
            for (int j = 0; j < n; ++j) {
                const double y = trans_b ? B[static_cast<std::size_t>(j) * ka + k]
                                         : B[static_cast<std::size_t>(k) * n + j];
                C[static_cast<std::size_t>(i) * n + j] += x * y;
            }
        }
    return make_node(std::move(out), {a, b},
                     [a, b, trans_a, trans_b](const Variable& gy,
                                              const std::vector<bool>& needed) {
                         std::vector<Variable> gs(2);
                         if (needed[0])
                             gs[0] = trans_a ? matmul(b, gy, trans_b, true)
                                             : matmul(gy, b, false, !trans_b);
                         if (needed[1])
                             gs[1] = trans_b ? matmul(gy, a, true, trans_a)
                                             : matmul(a, gy, !trans_a, false);
                         return gs;
                     },
                     "matmul");
}

Variable reshape(const Variable& a, Shape shape) {
    const Shape in_shape = a.shape();
    return make_node(a.value().reshaped(std::move(shape)), {a},
                     [in_shape](const Variable& gy, const std::vector<bool>&) {
                         return std::vector<Variable>{reshape(gy, in_shape)};
                     },
                     "reshape");
}

namespace {

void check_channel_tensor(const Variable& v, const char* op) {
    if (v.value().ndim() < 2) throw ShapeError(std::string(op) + " needs a [B,C,..] tensor");
}

} // namespace

Variable concat_ch(const Variable& a, const Variable& b) {
    check_channel_tensor(a, "concat_ch");
    check_channel_tensor(b, "concat_ch");
    Shape sa = a.shape(), sb = b.shape();
    if (sa.size() != sb.size()) throw ShapeError("concat_ch: rank mismatch");
    for (std::size_t i = 0; i < sa.size(); ++i)
        if (i != 1 && sa[i] != sb[i]) throw ShapeError("concat_ch: non-channel dims differ");
    const int batch = sa[0], ca = sa[1], cb = sb[1];
    const std::size_t per = per_channel_count(sa);
    Shape so = sa;
    so[1] = ca + cb;
    Tensor out(so);
    for (int bb = 0; bb < batch; ++bb) {
        std::copy_n(a.value().data() + static_cast<std::size_t>(bb) * ca * per, ca * per,
                    out.data() + static_cast<std::size_t>(bb) * (ca + cb) * per);
        std::copy_n(b.value().data() + static_cast<std::size_t>(bb) * cb * per, cb * per,
                    out.data() + static_cast<std::size_t>(bb) * (ca + cb) * per + ca * per);
    }
    return make_node(std::move(out), {a, b},
                     [ca, cb](const Variable& gy, const std::vector<bool>& needed) {
                         std::vector<Variable> gs(2);
                         if (needed[0]) gs[0] = slice_ch(gy, 0, ca);
                         if (needed[1]) gs[1] = slice_ch(gy, ca, ca + cb);
                         return gs;
                     },
                     "concat_ch");
}

Variable slice_ch(const Variable& a, int c0, int c1) {
    check_channel_tensor(a, "slice_ch");
    const Shape sa = a.shape();
    if (c0 < 0 || c1 > sa[1] || c0 >= c1) throw ShapeError("slice_ch: bad channel range");
    const int batch = sa[0], ctotal = sa[1], cs = c1 - c0;
    const std::size_t per = per_channel_count(sa);
    Shape so = sa;
    so[1] = cs;
    Tensor out(so);
    for (int bb = 0; bb < batch; ++bb)
        std::copy_n(a.value().data() + (static_cast<std::size_t>(bb) * ctotal + c0) * per,
                    static_cast<std::size_t>(cs) * per,
                    out.data() + static_cast<std::size_t>(bb) * cs * per);
    return make_node(std::move(out), {a},
                     [c0, ctotal](const Variable& gy, const std::vector<bool>&) {
                         return std::vector<Variable>{embed_ch(gy, c0, ctotal)};
                     },
                     "slice_ch");
}

Variable embed_ch(const Variable& a, int c0, int total_channels) {
    check_channel_tensor(a, "embed_ch");
    const Shape sa = a.shape();
    const int batch = sa[0], cs = sa[1];
    if (c0 < 0 || c0 + cs > total_channels) throw ShapeError("embed_ch: bad channel range");
    const std::size_t per = per_channel_count(sa);
    Shape so = sa;
    so[1] = total_channels;
    Tensor out(so);
    for (int bb = 0; bb < batch; ++bb)
        std::copy_n(a.value().data() + static_cast<std::size_t>(bb) * cs * per,
                    static_cast<std::size_t>(cs) * per,
                    out.data() + (static_cast<std::size_t>(bb) * total_channels + c0) * per);
    const int c1 = c0 + cs;
    return make_node(std::move(out), {a},
                     [c0, c1](const Variable& gy, const std::vector<bool>&) {
                         return std::vector<Variable>{slice_ch(gy, c0, c1)};
                     },
                     "embed_ch");
}

// ---- convolution ----

Variable conv3d(const Variable& x, const Variable& w, const Conv3dGeom& g) {
    Tensor out = conv3d_forward_kernel(x.value(), w.value(), g);
    return make_node(std::move(out), {x, w},
                     [x, w, g](const Variable& gy, const std::vector<bool>& needed) {
                         std::vector<Variable> gs(2);
                         if (needed[0]) gs[0] = conv3d_input_grad(gy, w, g);
                         if (needed[1]) gs[1] = conv3d_weight_grad(x, gy, g);
                         return gs;
                     },
                     "conv3d");
}

Variable conv3d_input_grad(const Variable& gy, const Variable& w, const Conv3dGeom& g) {
    Tensor out = conv3d_input_grad_kernel(gy.value(), w.value(), g);
    return make_node(std::move(out), {gy, w},
                     [gy, w, g](const Variable& gz, const std::vector<bool>& needed) {
                         std::vector<Variable> gs(2);
                         if (needed[0]) gs[0] = conv3d(gz, w, g);
                         if (needed[1]) gs[1] = conv3d_weight_grad(gz, gy, g);
                         return gs;
                     },
                     "conv3d_input_grad");
}

Variable conv3d_weight_grad(const Variable& x, const Variable& gy, const Conv3dGeom& g) {
    Tensor out = conv3d_weight_grad_kernel(x.value(), gy.value(), g);
    return make_node(std::move(out), {x, gy},
                     [x, gy, g](const Variable& gw, const std::vector<bool>& needed) {
                         std::vector<Variable> gs(2);
                         if (needed[0]) gs[0] = conv3d_input_grad(gy, gw, g);
                         if (needed[1]) gs[1] = conv3d(x, gw, g);
                         return gs;
                     },
                     "conv3d_weight_grad");
}

// ---- max pooling (2x2x2, stride 2) ----

namespace {

Variable max_unpool2(const Variable& g, const std::shared_ptr<std::vector<std::int64_t>>& idx,
                     const Shape& in_shape);

Variable pool_gather(const Variable& gz, const std::shared_ptr<std::vector<std::int64_t>>& idx,
                     const Shape& out_shape) {
    Tensor out(out_shape);
    const double* src = gz.value().data();
    for (std::size_t i = 0; i < out.numel(); ++i)
        out[i] = src[static_cast<std::size_t>((*idx)[i])];
    const Shape in_shape = gz.shape();
    return make_node(std::move(out), {gz},
                     [idx, in_shape](const Variable& gy, const std::vector<bool>&) {
                         return std::vector<Variable>{max_unpool2(gy, idx, in_shape)};
                     },
                     "pool_gather");
}

Variable max_unpool2(const Variable& g, const std::shared_ptr<std::vector<std::int64_t>>& idx,
                     const Shape& in_shape) {
    Tensor out(in_shape);
    const double* src = g.value().data();
    for (std::size_t i = 0; i < g.value().numel(); ++i)
        out[static_cast<std::size_t>((*idx)[i])] += src[i];
    const Shape out_shape = g.shape();
    return make_node(std::move(out), {g},
                     [idx, out_shape](const Variable& gy, const std::vector<bool>&) {
                         return std::vector<Variable>{pool_gather(gy, idx, out_shape)};
                     },
                     "max_unpool2");
}

} // namespace

Variable maxpool3d2(const Variable& x) {
    const Tensor& xv = x.value();
    if (xv.ndim() != 5) throw ShapeError("maxpool3d2 expects [B,C,D,H,W]");
    const int batch = xv.dim(0), ch = xv.dim(1), d = xv.dim(2), h = xv.dim(3), w = xv.dim(4);
    if (d % 2 || h % 2 || w % 2) throw ShapeError("maxpool3d2 needs even spatial dims");
    const int od = d / 2, oh = h / 2, ow = w / 2;
    Tensor out(Shape{batch, ch, od, oh, ow});
    auto idx = std::make_shared<std::vector<std::int64_t>>(out.numel());
    std::size_t o = 0;
    for (int b = 0; b < batch; ++b)
        for (int c = 0; c < ch; ++c) {
            const std::size_t plane =
                (static_cast<std::size_t>(b) * ch + c) * static_cast<std::size_t>(d) * h * w;
            for (int z = 0; z < od; ++z)
                for (int y = 0; y < oh; ++y)
                    for (int xx = 0; xx < ow; ++xx) {
                        // Seed with the first window element so ties (and
                        // non-finite values) keep a valid index.
                        const std::size_t first =
                            plane + (static_cast<std::size_t>(2 * z) * h + 2 * y) * w + 2 * xx;
                        double best = xv[first];
                        std::int64_t best_i = static_cast<std::int64_t>(first);
                        for (int dz = 0; dz < 2; ++dz)
                            for (int dy = 0; dy < 2; ++dy)
                                for (int dx = 0; dx < 2; ++dx) {
                                    const std::size_t i =
                                        plane +
                                        (static_cast<std::size_t>(2 * z + dz) * h +
                                         (2 * y + dy)) *
                                            w +
                                        (2 * xx + dx);
                                    if (xv[i] > best) {
                                        best = xv[i];
                                        best_i = static_cast<std::int64_t>(i);
                                    }
                                }
                        out[o] = best;
                        (*idx)[o] = best_i;
                        ++o;
                    }
        }
    const Shape in_shape = xv.shape();
    return make_node(std::move(out), {x},
                     [idx, in_shape](const Variable& gy, const std::vector<bool>&) {
                         return std::vector<Variable>{max_unpool2(gy, idx, in_shape)};
                     },
                     "maxpool3d2");
}

// ---- reverse-mode driver ----

std::vector<Variable> grad(const Variable& output, const std::vector<Variable>& inputs,
                           bool create_graph) {
    if (!output.defined()) throw ArgumentError("grad: undefined output");

    // Topological order of the subgraph reachable from the output.
    std::vector<Node*> topo;
    {
        std::unordered_set<Node*> seen;
        std::vector<std::pair<Node*, std::size_t>> stack;
        stack.emplace_back(output.node().get(), 0);
        seen.insert(output.node().get());
        while (!stack.empty()) {
            auto& [node, next] = stack.back();
            if (next < node->parents.size()) {
                Node* p = node->parents[next++].node().get();
                if (p && !seen.count(p)) {
                    seen.insert(p);
                    stack.emplace_back(p, 0);
                }
            } else {
                topo.push_back(node);
                stack.pop_back();
            }
        }
    }

    // A node matters only if some requested input is reachable from it.
    std::unordered_set<Node*> targets;
    for (const auto& in : inputs)
        if (in.defined()) targets.insert(in.node().get());
    std::unordered_map<Node*, bool> reaches;
    // topo is post-order: parents of a node appear before it.
    for (Node* n : topo) {
        bool r = targets.count(n) > 0;
        for (const auto& p : n->parents) r = r || reaches[p.node().get()];
        reaches[n] = r;
    }

    std::unordered_map<Node*, Variable> adj;
    adj[output.node().get()] = Variable::constant(Tensor(output.shape(), 1.0));

    std::unique_ptr<NoGradGuard> guard;
    if (!create_graph) guard = std::make_unique<NoGradGuard>();

    for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
        Node* n = *it;
        if (!n->backward || !reaches[n]) continue;
        auto found = adj.find(n);
        if (found == adj.end()) continue;
        std::vector<bool> needed(n->parents.size(), false);
        bool any = false;
        for (std::size_t i = 0; i < n->parents.size(); ++i) {
            Node* p = n->parents[i].node().get();
            needed[i] = p->requires_grad && reaches[p];
            any = any || needed[i];
        }
        if (!any) continue;
        std::vector<Variable> contribs = n->backward(found->second, needed);
        for (std::size_t i = 0; i < n->parents.size(); ++i) {
            if (!needed[i] || !contribs[i].defined()) continue;
            Node* p = n->parents[i].node().get();
            auto slot = adj.find(p);
            if (slot == adj.end()) adj.emplace(p, contribs[i]);
            else slot->second = add(slot->second, contribs[i]);
        }
    }

    std::vector<Variable> out;
    out.reserve(inputs.size());
    for (const auto& in : inputs) {
        auto found = in.defined() ? adj.find(in.node().get()) : adj.end();
        if (found != adj.end()) out.push_back(found->second);
        else out.push_back(Variable::constant(Tensor(in.shape())));
    }
    return out;
}

} // namespace vxc::nn
