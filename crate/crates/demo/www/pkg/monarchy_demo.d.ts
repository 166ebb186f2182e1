/* tslint:disable */
/* eslint-disable */

export class GridSolution {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    /**
     * Cost per node in id order, `-1` for unreached.
     */
    costs(): Float64Array;
    parents(): Uint32Array;
    /**
     * Tree path from the source to the far corner.
     */
    path(): Uint32Array;
    regions(): Uint32Array;
    /**
     * Counters and phase times as JSON.
     */
    summary(): string;
    readonly cols: number;
    readonly rows: number;
}

/**
 * JSON `{agree, disagreement, records}`.
 */
export function compare_grid(rows: number, cols: number, wmin: number, wmax: number, seed: bigint, hzp: boolean): string;

/**
 * CSV with one row per (shape, algorithm).
 */
export function shape_sweep(n_total: number, cols: string, algos: string, seed: bigint): string;

export function solve_grid(rows: number, cols: number, wmin: number, wmax: number, seed: bigint, hzp: boolean, algo: string): GridSolution;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_gridsolution_free: (a: number, b: number) => void;
    readonly compare_grid: (a: number, b: number, c: number, d: number, e: bigint, f: number) => [number, number, number, number];
    readonly gridsolution_cols: (a: number) => number;
    readonly gridsolution_costs: (a: number) => [number, number];
    readonly gridsolution_parents: (a: number) => [number, number];
    readonly gridsolution_path: (a: number) => [number, number];
    readonly gridsolution_regions: (a: number) => [number, number];
    readonly gridsolution_rows: (a: number) => number;
    readonly gridsolution_summary: (a: number) => [number, number];
    readonly shape_sweep: (a: number, b: number, c: number, d: number, e: number, f: bigint) => [number, number, number, number];
    readonly solve_grid: (a: number, b: number, c: number, d: number, e: bigint, f: number, g: number, h: number) => [number, number, number];
    readonly __externref_table_alloc: () => number;
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
    readonly __wbindgen_start: () => void;
}

export type SyncInitInput = BufferSource | WebAssembly.Module;

/**
 * Instantiates the given `module`, which can either be bytes or
 * a precompiled `WebAssembly.Module`.
 *
 * @param {{ module: SyncInitInput }} module - Passing `SyncInitInput` directly is deprecated.
 *
 * @returns {InitOutput}
 */
export function initSync(module: { module: SyncInitInput } | SyncInitInput): InitOutput;

/**
 * If `module_or_path` is {RequestInfo} or {URL}, makes a request and
 * for everything else, calls `WebAssembly.instantiate` directly.
 *
 * @param {{ module_or_path: InitInput | Promise<InitInput> }} module_or_path - Passing `InitInput` directly is deprecated.
 *
 * @returns {Promise<InitOutput>}
 */
export default function __wbg_init (module_or_path?: { module_or_path: InitInput | Promise<InitInput> } | InitInput | Promise<InitInput>): Promise<InitOutput>;
