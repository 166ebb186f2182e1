/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_gridsolution_free: (a: number, b: number) => void;
export const compare_grid: (a: number, b: number, c: number, d: number, e: bigint, f: number) => [number, number, number, number];
export const gridsolution_cols: (a: number) => number;
export const gridsolution_costs: (a: number) => [number, number];
export const gridsolution_parents: (a: number) => [number, number];
export const gridsolution_path: (a: number) => [number, number];
export const gridsolution_regions: (a: number) => [number, number];
export const gridsolution_rows: (a: number) => number;
export const gridsolution_summary: (a: number) => [number, number];
export const shape_sweep: (a: number, b: number, c: number, d: number, e: number, f: bigint) => [number, number, number, number];
export const solve_grid: (a: number, b: number, c: number, d: number, e: bigint, f: number, g: number, h: number) => [number, number, number];
export const __externref_table_alloc: () => number;
export const __wbindgen_externrefs: WebAssembly.Table;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
export const __wbindgen_start: () => void;
