// SPDX-License-Identifier: Apache-2.0
#include "vxc/nn/conv3d.hpp"

#include <cstring>
#include <string>

namespace vxc::nn {

Conv3dGeom Conv3dGeom::same_stride1(int spatial, int kernel) {
    Conv3dGeom g;
    g.in = {spatial, spatial, spatial};
    g.out = g.in;
    g.k = {kernel, kernel, kernel};
    g.stride = {1, 1, 1};
    const int lo = (kernel - 1) / 2;
    g.pad_lo = {lo, lo, lo};
    return g;
}

Conv3dGeom Conv3dGeom::halve(int spatial, int kernel) {
    if (spatial % 2 != 0)
        throw ShapeError("halving conv needs an even spatial size, got " +
                         std::to_string(spatial));
    Conv3dGeom g;
    g.in = {spatial, spatial, spatial};
    g.out = {spatial / 2, spatial / 2, spatial / 2};
    g.k = {kernel, kernel, kernel};
    g.stride = {2, 2, 2};
    g.pad_lo = {1, 1, 1};
    return g;
}

namespace {

// C += A(MxK) * B(KxN)
void gemm_nn(int M, int N, int K, const double* A, const double* B, double* C) {
    for (int m = 0; m < M; ++m) {
        const double* a_row = A + static_cast<std::size_t>(m) * K;
        double* c_row = C + static_cast<std::size_t>(m) * N;
        for (int k = 0; k < K; ++k) {
            const double a = a_row[k];
            if (a == 0.0) continue;
            const double* b_row = B + static_cast<std::size_t>(k) * N;
            for (int n = 0; n < N; ++n) c_row[n] += a * b_row[n];
        }
    }
}

// C += A(MxK) * B(NxK)^T
void gemm_nt(int M, int N, int K, const double* A, const double* B, double* C) {
    for (int m = 0; m < M; ++m) {
        const double* a_row = A + static_cast<std::size_t>(m) * K;
        double* c_row = C + static_cast<std::size_t>(m) * N;
        for (int n = 0; n < N; ++n) {
            const double* b_row = B + static_cast<std::size_t>(n) * K;
            double s = 0.0;
            for (int k = 0; k < K; ++k) s += a_row[k] * b_row[k];
            c_row[n] += s;
        }
    }
}

// C += A(KxM)^T * B(KxN)
void gemm_tn(int M, int N, int K, const double* A, const double* B, double* C) {
    for (int k = 0; k < K; ++k) {
        const double* a_row = A + static_cast<std::size_t>(k) * M;
        const double* b_row = B + static_cast<std::size_t>(k) * N;
        for (int m = 0; m < M; ++m) {
            const double a = a_row[m];
            if (a == 0.0) continue;
            double* c_row = C + static_cast<std::size_t>(m) * N;
            for (int n = 0; n < N; ++n) c_row[n] += a * b_row[n];
        }
    }
}

struct SliceDims {
    int ci, kd, kh, kw, oh, ow, ih, iw, id;
    std::size_t rows, cols;
};

SliceDims slice_dims(int ci, const Conv3dGeom& g) {
    SliceDims s;
    s.ci = ci;
    s.kd = g.k[0]; s.kh = g.k[1]; s.kw = g.k[2];
    s.oh = g.out[1]; s.ow = g.out[2];
    s.id = g.in[0]; s.ih = g.in[1]; s.iw = g.in[2];
    s.rows = static_cast<std::size_t>(ci) * s.kd * s.kh * s.kw;
    s.cols = static_cast<std::size_t>(s.oh) * s.ow;
    return s;
}

/// Gather one output-depth slice of the im2col matrix:
/// col[(c*kd+dz)*kh*kw + dy*kw + dx][oh*ow + ...] = x[c, id, ih, iw] (0 when padded).
void im2col_slice(const double* x, const SliceDims& s, const Conv3dGeom& g, int od, double* col) {
    std::memset(col, 0, s.rows * s.cols * sizeof(double));
    for (int c = 0; c < s.ci; ++c) {
        const double* xc = x + static_cast<std::size_t>(c) * s.id * s.ih * s.iw;
        for (int dz = 0; dz < s.kd; ++dz) {
            const int id = od * g.stride[0] - g.pad_lo[0] + dz;
            if (id < 0 || id >= s.id) continue;
            for (int dy = 0; dy < s.kh; ++dy) {
                for (int dx = 0; dx < s.kw; ++dx) {
                    double* row =
                        col + ((static_cast<std::size_t>(c) * s.kd + dz) * s.kh * s.kw +
                               static_cast<std::size_t>(dy) * s.kw + dx) *
                                  s.cols;
                    for (int oy = 0; oy < s.oh; ++oy) {
                        const int ih = oy * g.stride[1] - g.pad_lo[1] + dy;
                        if (ih < 0 || ih >= s.ih) continue;
                        const double* xrow =
                            xc + (static_cast<std::size_t>(id) * s.ih + ih) * s.iw;
                        double* crow = row + static_cast<std::size_t>(oy) * s.ow;
                        for (int ox = 0; ox < s.ow; ++ox) {
                            const int iw = ox * g.stride[2] - g.pad_lo[2] + dx;
                            if (iw >= 0 && iw < s.iw) crow[ox] = xrow[iw];
                        }
                    }
                }
            }
        }
    }
}

/// Scatter-add the adjoint of im2col_slice.
void col2im_slice(const double* col, const SliceDims& s, const Conv3dGeom& g, int od, double* x) {
    for (int c = 0; c < s.ci; ++c) {
        double* xc = x + static_cast<std::size_t>(c) * s.id * s.ih * s.iw;
        for (int dz = 0; dz < s.kd; ++dz) {
            const int id = od * g.stride[0] - g.pad_lo[0] + dz;
            if (id < 0 || id >= s.id) continue;
            for (int dy = 0; dy < s.kh; ++dy) {
                for (int dx = 0; dx < s.kw; ++dx) {
                    const double* row =
                        col + ((static_cast<std::size_t>(c) * s.kd + dz) * s.kh * s.kw +
                               static_cast<std::size_t>(dy) * s.kw + dx) *
                                  s.cols;
                    for (int oy = 0; oy < s.oh; ++oy) {
                        const int ih = oy * g.stride[1] - g.pad_lo[1] + dy;
                        if (ih < 0 || ih >= s.ih) continue;
                        double* xrow = xc + (static_cast<std::size_t>(id) * s.ih + ih) * s.iw;
                        const double* crow = row + static_cast<std::size_t>(oy) * s.ow;
                        for (int ox = 0; ox < s.ow; ++ox) {
                            const int iw = ox * g.stride[2] - g.pad_lo[2] + dx;
                            if (iw >= 0 && iw < s.iw) xrow[iw] += crow[ox];
                        }
                    }
                }
            }
        }
    }
}

void check_x(const Tensor& x, const Conv3dGeom& g, int ci) {
    if (x.ndim() != 5 || x.dim(1) != ci || x.dim(2) != g.in[0] || x.dim(3) != g.in[1] ||
        x.dim(4) != g.in[2])
        throw ShapeError("conv3d: input shape " + shape_to_string(x.shape()) +
                         " does not match geometry");
}

void check_gy(const Tensor& gy, const Conv3dGeom& g, int co) {
    if (gy.ndim() != 5 || gy.dim(1) != co || gy.dim(2) != g.out[0] || gy.dim(3) != g.out[1] ||
        gy.dim(4) != g.out[2])
        throw ShapeError("conv3d: output-side shape " + shape_to_string(gy.shape()) +
                         " does not match geometry");
}

} // namespace

Tensor conv3d_forward_kernel(const Tensor& x, const Tensor& w, const Conv3dGeom& g) {
    const int co = w.dim(0), ci = w.dim(1);
    check_x(x, g, ci);
    const int batch = x.dim(0);
    const SliceDims s = slice_dims(ci, g);
    Tensor y(Shape{batch, co, g.out[0], g.out[1], g.out[2]});
    std::vector<double> col(s.rows * s.cols);
    const std::size_t x_stride = static_cast<std::size_t>(ci) * s.id * s.ih * s.iw;
    const std::size_t y_stride = static_cast<std::size_t>(co) * g.out[0] * s.cols;
    for (int b = 0; b < batch; ++b) {
        const double* xb = x.data() + static_cast<std::size_t>(b) * x_stride;
        double* yb = y.data() + static_cast<std::size_t>(b) * y_stride;
        for (int od = 0; od < g.out[0]; ++od) {
            im2col_slice(xb, s, g, od, col.data());
            // y[b,:,od,:,:] += W(co x rows) * col(rows x cols)
            std::vector<double> out(static_cast<std::size_t>(co) * s.cols, 0.0);
            gemm_nn(co, static_cast<int>(s.cols), static_cast<int>(s.rows), w.data(), col.data(),
                    out.data());
            for (int c = 0; c < co; ++c)
                std::memcpy(yb + (static_cast<std::size_t>(c) * g.out[0] + od) * s.cols,
                            out.data() + static_cast<std::size_t>(c) * s.cols,
                            s.cols * sizeof(double));
        }
    }
    return y;
}

Tensor conv3d_input_grad_kernel(const Tensor& gy, const Tensor& w, const Conv3dGeom& g) {
    const int co = w.dim(0), ci = w.dim(1);
    check_gy(gy, g, co);
    const int batch = gy.dim(0);
    const SliceDims s = slice_dims(ci, g);
    Tensor dx(Shape{batch, ci, g.in[0], g.in[1], g.in[2]});
    std::vector<double> col(s.rows * s.cols);
    std::vector<double> gslice(static_cast<std::size_t>(co) * s.cols);
    const std::size_t x_stride = static_cast<std::size_t>(ci) * s.id * s.ih * s.iw;
    const std::size_t y_stride = static_cast<std::size_t>(co) * g.out[0] * s.cols;
    for (int b = 0; b < batch; ++b) {
        const double* gb = gy.data() + static_cast<std::size_t>(b) * y_stride;
        double* xb = dx.data() + static_cast<std::size_t>(b) * x_stride;
        for (int od = 0; od < g.out[0]; ++od) {
            for (int c = 0; c < co; ++c)
                std::memcpy(gslice.data() + static_cast<std::size_t>(c) * s.cols,
                            gb + (static_cast<std::size_t>(c) * g.out[0] + od) * s.cols,
                            s.cols * sizeof(double));
            // col(rows x cols) = W^T(rows x co) * gslice(co x cols)
            std::fill(col.begin(), col.end(), 0.0);
            gemm_tn(static_cast<int>(s.rows), static_cast<int>(s.cols), co, w.data(),
                    gslice.data(), col.data());
            col2im_slice(col.data(), s, g, od, xb);
        }
    }
    return dx;
}

Tensor conv3d_weight_grad_kernel(const Tensor& x, const Tensor& gy, const Conv3dGeom& g) {
    const int ci = x.dim(1), co = gy.dim(1);
    check_x(x, g, ci);
    check_gy(gy, g, co);
    const int batch = x.dim(0);
    const SliceDims s = slice_dims(ci, g);
    Tensor dw(Shape{co, ci, g.k[0], g.k[1], g.k[2]});
    std::vector<double> col(s.rows * s.cols);
    std::vector<double> gslice(static_cast<std::size_t>(co) * s.cols);
    const std::size_t x_stride = static_cast<std::size_t>(ci) * s.id * s.ih * s.iw;
    const std::size_t y_stride = static_cast<std::size_t>(co) * g.out[0] * s.cols;
    for (int b = 0; b < batch; ++b) {
        const double* xb = x.data() + static_cast<std::size_t>(b) * x_stride;
        const double* gb = gy.data() + static_cast<std::size_t>(b) * y_stride;
        for (int od = 0; od < g.out[0]; ++od) {
            im2col_slice(xb, s, g, od, col.data());
            for (int c = 0; c < co; ++c)
                std::memcpy(gslice.data() + static_cast<std::size_t>(c) * s.cols,
                            gb + (static_cast<std::size_t>(c) * g.out[0] + od) * s.cols,
                            s.cols * sizeof(double));
            // dW(co x rows) += gslice(co x cols) * col(rows x cols)^T
            gemm_nt(co, static_cast<int>(s.rows), static_cast<int>(s.cols), gslice.data(),
                    col.data(), dw.data());
        }
    }
    return dw;
}

} // namespace vxc::nn
