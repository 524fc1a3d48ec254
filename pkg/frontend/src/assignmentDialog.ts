import { AXES, FEATURES, AssignmentSpec, CategoryName } from './protocol';

export interface DialogRow {
    name: string;
    category: CategoryName;
    target: string | null;
}

/**
 * Editable model behind the assignment dialog. Mirrors the server's
 * uniqueness rules locally so a bad mapping is flagged before any command
 * is sent.
 */
export class AssignmentDialogModel {
    rows: DialogRow[];

    constructor(dimensionNames: string[], existing?: AssignmentSpec | null) {
        this.rows = dimensionNames.map((name) => {
            const entry = existing?.[name];
            return {
                name,
                category: entry?.category ?? 'skipped',
                target: entry?.target ?? null,
            };
        });
    }

    setCategory(index: number, category: CategoryName): void {
        const row = this.rows[index];
        row.category = category;
        if (category === 'spatial') {
            row.target = row.target && (AXES as readonly string[])
                .includes(row.target) ? row.target : null;
        } else if (category === 'visual') {
            row.target = row.target && (FEATURES as readonly string[])
                .includes(row.target) ? row.target : null;
        } else {
            row.target = null;
        }
    }

    setTarget(index: number, target: string | null): void {
        this.rows[index].target = target;
    }

    targetChoices(index: number): readonly string[] {
        const category = this.rows[index].category;
        if (category === 'spatial') return AXES;
        if (category === 'visual') return FEATURES;
        return [];
    }

    /** Human-readable problems; empty means the mapping may be submitted. */
    validate(): string[] {
        const problems: string[] = [];
        const used = new Map<string, string[]>();
        for (const row of this.rows) {
            if (row.category === 'spatial' || row.category === 'visual') {
                if (!row.target) {
                    problems.push(`${row.name}: pick a target ` +
                        (row.category === 'spatial' ? 'axis' : 'feature'));
                    continue;
                }
                const key = `${row.category}:${row.target}`;
                const holders = used.get(key) ?? [];
                holders.push(row.name);
                used.set(key, holders);
            }
        }
        for (const [key, holders] of used) {
            if (holders.length > 1) {
                const [category, target] = key.split(':');
                const kind = category === 'spatial' ? 'axis' : 'feature';
                problems.push(
                    `${kind} ${target} assigned twice (${holders.join(', ')})`);
            }
        }
        return problems;
    }

    toSpec(): AssignmentSpec {
        const spec: AssignmentSpec = {};
        for (const row of this.rows) {
            spec[row.name] = row.target
                ? { category: row.category,
                    target: row.target as AssignmentSpec[string]['target'] }
                : { category: row.category };
        }
        return spec;
    }
}

const CATEGORIES: CategoryName[] = ['spatial', 'visual', 'anonymous',
                                    'skipped'];

/** Render the dialog; submit calls `onSubmit(spec)` only when the local
 * validation passes, otherwise the problems are shown inline. */
export function buildAssignmentDialog(
        root: HTMLElement, model: AssignmentDialogModel,
        onSubmit: (spec: AssignmentSpec) => void): void {
    root.textContent = '';
    const table = document.createElement('table');
    table.className = 'assignment';
    model.rows.forEach((row, index) => {
        const tr = document.createElement('tr');
        const nameCell = document.createElement('td');
        nameCell.textContent = row.name;
        tr.appendChild(nameCell);

        const categoryCell = document.createElement('td');
        const categorySelect = document.createElement('select');
        categorySelect.dataset.dim = row.name;
        for (const category of CATEGORIES) {
            const option = document.createElement('option');
            option.value = category;
            option.textContent = category;
            option.selected = category === row.category;
            categorySelect.appendChild(option);
        }
        const targetSelect = document.createElement('select');
        const refreshTargets = () => {
            targetSelect.textContent = '';
            const choices = model.targetChoices(index);
            targetSelect.disabled = choices.length === 0;
            for (const choice of choices) {
                const option = document.createElement('option');
                option.value = choice;
                option.textContent = choice;
                option.selected = choice === model.rows[index].target;
                targetSelect.appendChild(option);
            }
            if (!model.rows[index].target && choices.length) {
                targetSelect.selectedIndex = -1;
            }
        };
        categorySelect.addEventListener('change', () => {
            model.setCategory(index,
                              categorySelect.value as CategoryName);
            refreshTargets();
        });
        targetSelect.addEventListener('change', () => {
            model.setTarget(index, targetSelect.value || null);
        });
        refreshTargets();
        categoryCell.appendChild(categorySelect);
        tr.appendChild(categoryCell);
        const targetCell = document.createElement('td');
        targetCell.appendChild(targetSelect);
        tr.appendChild(targetCell);
        table.appendChild(tr);
    });
    root.appendChild(table);

    const problems = document.createElement('div');
    problems.className = 'problems';
    root.appendChild(problems);

    const submit = document.createElement('button');
    submit.textContent = 'Apply assignment';
    submit.addEventListener('click', () => {
        const errors = model.validate();
        problems.textContent = errors.join('; ');
        if (!errors.length) onSubmit(model.toSpec());
    });
    root.appendChild(submit);
}
